def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for r in test_acceptance.RESULTS:
            terminalreporter.write_line(r.line())
