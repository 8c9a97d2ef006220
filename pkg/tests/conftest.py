import pytest

from spellkit.corrupt import MischiefList, SwitchTable
from spellkit.lexicon import Lexicon


@pytest.fixture
def small_lexicon():
    return Lexicon.from_forms(
        ["mačka", "spi", "na", "tipkovnici", "tip", "kovnici", "avto", "voda",
         "konj", "miza", "okno", "hiša", "pes", "teče", "leta"]
    )


@pytest.fixture
def switch_table():
    return SwitchTable()


@pytest.fixture
def mischief_two_variants():
    return MischiefList({"ampak": ["anpak"], "zdaj": ["zdej", "sdaj"]})
