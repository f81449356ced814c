import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from veredit import buffer as bm
from veredit.backends import GapBuffer
from veredit.dsl import DeleteLine, InsertLine, ReadLine

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

lines = st.text(st.characters(blacklist_characters="\n", blacklist_categories=("Cs",)),
                max_size=8)
buffers = st.lists(lines, max_size=12).map(tuple)
positions = st.integers(min_value=0, max_value=40)


@st.composite
def buffer_and_pos_within(draw):
    b = draw(buffers)
    return b, draw(st.integers(0, len(b)))


commands = st.one_of(
    st.builds(InsertLine, positions, lines),
    st.builds(ReadLine, positions, lines),
    st.builds(DeleteLine, positions),
)


class OffByOneDeleteGap(GapBuffer):
    """Gap buffer that deletes the line after the requested one."""

    name = "gap-mutant-delete"

    def apply(self, cmd):
        if isinstance(cmd, DeleteLine):
            cmd = DeleteLine(cmd.pos + 1)
        return super().apply(cmd)


def mutant_insert_line(b, pos, s):
    bm.check_line(s)
    return bm.first_n(b, pos + 1) + (s,) + bm.skip_n(b, pos + 1)


def mutant_delete_line(b, pos):
    return bm.first_n(b, pos) + bm.skip_n(b, pos + 2)


@pytest.fixture
def golden_script():
    return ["i", "Hello World!", "Line two", ".", "n", "1", "n", "d", "n"]


# acceptance criteria register their outcome here; printed after the run
CRITERIA = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(CRITERIA, key=str):
        ok, detail = CRITERIA[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {key}: {detail}")
