import pytest

from dercost import EquipmentScenario, FinancialParams


@pytest.fixture
def table1():
    """Generator verification case: 20000 h life, 5000 h/yr, 20-year project."""
    return EquipmentScenario(
        capital_cost=6750.0,
        replacement_cost=4725.0,
        salvage_value=0.0,
        economic_life=20000.0,
        annual_usage=5000.0,
        project_years=20,
    )


@pytest.fixture
def fp():
    return FinancialParams(nominal_interest=0.035, inflation=0.015)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
