import pytest

from epw_fixtures import epw_text, year_rows
from kinfacade.weather import synthesize_clear_sky


@pytest.fixture(scope="session")
def year_epw(tmp_path_factory):
    path = tmp_path_factory.mktemp("epw") / "year.epw"
    path.write_text(epw_text(year_rows()))
    return path


@pytest.fixture(scope="session")
def three_days():
    return synthesize_clear_sky(month=8, days=(10, 12))


@pytest.fixture(scope="session")
def one_day():
    return synthesize_clear_sky(month=8, days=(10, 10))
