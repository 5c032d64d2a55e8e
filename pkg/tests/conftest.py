import pathlib

import pytest

from feathergo.parser import parse_program

CORPUS = pathlib.Path(__file__).parent / "corpus"

# every .fgg corpus file that typechecks (fgg_list_fail is the negative fixture)
FGG_FILES = sorted(p for p in CORPUS.glob("*.fgg") if p.name != "fgg_list_fail.fgg")

# programs that terminate within the default budget
TERMINATING = [p for p in FGG_FILES if p.name != "omega.fgg"]

# assertion fixtures with their interpreter-oracle outcome (value / panic)
ASSERT_FIXTURES = {
    "typerep.fgg": "panic",
    "assert_pass.fgg": "value",
    "assert_fail.fgg": "panic",
    "assert_param_meta.fgg": "value",
    "assert_bound_meta.fgg": "value",
    "empty_iface_assert.fgg": "value",
    "fbound_self.fgg": "value",
    "struct_assert_fail.fgg": "panic",
}


def read(name: str) -> str:
    return (CORPUS / name).read_text()


def load(name: str):
    lang = "fgg" if name.endswith(".fgg") else "fg"
    return parse_program(read(name), lang)


@pytest.fixture(scope="session")
def corpus_programs():
    return {p.name: parse_program(p.read_text(), "fgg") for p in FGG_FILES}
