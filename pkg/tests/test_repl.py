import io

import pytest
from hypothesis import given
from hypothesis import strategies as st

from veredit.backends import GapBuffer, ReferenceBackend
from veredit.dsl import DeleteLine, InsertLine, ReadLine, eval_trace
from veredit.parser import (
    Delete, Empty, EndInsert, EnterInsert, InsertText, ParserMode, PrintNumbered,
    Quit, SetAddress, Write,
)
from veredit.repl import Session, run_session


def run(script, session=None):
    if session is None:
        session = Session()
    out = io.StringIO()
    code = run_session(session, [s + "\n" for s in script], out)
    return code, out.getvalue(), session


@pytest.mark.parametrize("backend", [GapBuffer, ReferenceBackend])
def test_golden_session(golden_script, backend):
    code, out, s = run(golden_script, Session(backend()))
    assert out == "2\tLine two\n1\tHello World!\n1\tLine two\n"
    assert code == 0
    assert s.lines() == ["Line two"]


def test_golden_session_with_prompt(golden_script):
    _, out, _ = run(golden_script, Session(prompt="> "))
    assert out == ("> " * 5 + "2\tLine two\n> > 1\tHello World!\n> > 1\tLine two\n> ")


def test_print_on_empty_is_error():
    s = Session()
    res = s.execute(PrintNumbered())
    assert res.text_out == ["?"] and res.error


def test_address_past_end_is_error():
    s = Session(GapBuffer.from_lines(["a"]))
    res = s.execute(SetAddress(2))
    assert res.text_out == ["?"]
    assert s.current == 1 and s.lines() == ["a"]


def test_delete_on_empty_is_error():
    assert Session().execute(Delete()).error


def test_unknown_command_prints_question_mark():
    assert run(["zz", "0"])[1] == "?\n?\n"


def test_loaded_file_points_at_last_line():
    s = Session(GapBuffer.from_lines(["a", "b", "c"]))
    assert s.current == 3
    assert s.execute(PrintNumbered()).text_out == ["3\tc"]


def test_insert_before_current_and_append_after():
    _, out, s = run(["i", "b", ".", "i", "a", ".", "2", "a", "c", ".", "n"])
    assert s.lines() == ["a", "b", "c"]
    assert out == "3\tc\n"


def test_append_on_empty_buffer():
    _, _, s = run(["a", "x", "y", "."])
    assert s.lines() == ["x", "y"] and s.current == 2


def test_delete_last_line_moves_pointer_up():
    _, out, s = run(["a", "x", "y", ".", "d", "n", "d", "n"])
    assert out == "1\tx\n?\n"
    assert s.current == 0


def test_print_command():
    assert run(["a", "hello", ".", "p"])[1] == "hello\n"


def test_empty_command_is_noop():
    s = Session(GapBuffer.from_lines(["a"]))
    assert s.execute(Empty()).text_out == []
    assert s.lines() == ["a"] and s.current == 1


def test_insert_mode_lines_are_text():
    _, out, s = run(["a", "n", "d", "q", "."])
    assert s.lines() == ["n", "d", "q"]
    assert out == ""


def test_script_ending_in_insert_mode_keeps_lines():
    code, _, s = run(["a", "one", "two"])
    assert code == 0
    assert s.lines() == ["one", "two"]
    assert s.mode is ParserMode.INSERT


def test_empty_input_exits_cleanly():
    code, out, s = run([])
    assert (code, out, s.lines()) == (0, "", [])


def test_quit_clean():
    code, out, _ = run(["q", "n"])
    assert code == 0 and out == ""


def test_quit_dirty_warns_once():
    code, out, _ = run(["a", "x", ".", "q", "q", "n"])
    assert code == 0 and out == "?\n"


def test_quit_warning_resets_after_other_command():
    s = Session()
    s.execute(EnterInsert()), s.execute(InsertText("x")), s.execute(EndInsert())
    assert s.execute(Quit()).error
    s.execute(PrintNumbered())
    assert s.execute(Quit()).error
    assert s.execute(Quit()).terminate


def test_write_without_filename_is_error():
    s = Session()
    assert s.execute(Write()).error


def test_write_sets_filename_and_clears_dirty(tmp_path):
    target = tmp_path / "out.txt"
    _, out, s = run(["a", "x", "y", ".", f"w {target}", "q"])
    assert out == ""
    assert target.read_bytes() == b"x\ny\n"
    assert s.filename == str(target) and not s.dirty


def test_write_failure_is_error(tmp_path):
    s = Session(filename=str(tmp_path / "missing" / "f.txt"))
    assert s.execute(Write()).error


def test_carriage_return_kept_in_content():
    _, out, s = run(["a", "dos\r", ".", "p"])
    assert s.lines() == ["dos\r"]
    assert out == "dos\r\n"


def test_transcript_determinism(golden_script):
    assert run(golden_script)[1] == run(golden_script)[1]


# -- properties ---------------------------------------------------------------

class RecordingBackend(GapBuffer):
    def __init__(self, lines=()):
        super().__init__(lines)
        self.log = []

    def apply(self, cmd):
        self.log.append(cmd)
        return super().apply(cmd)


actions = st.lists(st.one_of(
    st.tuples(st.just("addr"), st.integers(1, 8)),
    st.tuples(st.just("i"), st.lists(st.sampled_from(["x", "y", ""]), max_size=3)),
    st.tuples(st.just("a"), st.lists(st.sampled_from(["x", "y", ""]), max_size=3)),
    st.tuples(st.just("d")),
    st.tuples(st.just("n")),
), max_size=25)


@given(actions)
def test_address_translation(script):
    """Every command the session issues uses position = address - 1."""
    session = Session(RecordingBackend())
    expected = []
    lines, cur = [], 0
    for act in script:
        if act[0] == "addr":
            session.feed(str(act[1]))
            if act[1] <= len(lines):
                cur = act[1]
        elif act[0] in ("i", "a"):
            session.feed(act[0])
            at = max(cur - 1, 0) if act[0] == "i" else cur
            for text in act[1]:
                session.feed(text)
                expected.append(InsertLine(at, text))
                lines.insert(at, text)
                at += 1
                cur = at
            session.feed(".")
        elif act[0] == "d":
            session.feed("d")
            if cur:
                expected.append(DeleteLine(cur - 1))
                del lines[cur - 1]
                cur = min(cur, len(lines))
        else:
            session.feed("n")
            if cur:
                expected.append(ReadLine(cur - 1, ""))
        assert session.current == cur
    assert session.backend.log == expected
    assert session.lines() == lines
    assert tuple(lines) == eval_trace(expected, ())[0]


inputs = st.lists(st.sampled_from(
    ["i", "a", "d", "n", "p", ".", "", "1", "2", "3", "7", "0", "zz", "text", "q"]
), max_size=40)


@given(inputs)
def test_pointer_invariant(script):
    s = Session()
    for text in script:
        s.feed(text)
        n = len(s)
        assert (s.current == 0) == (n == 0)
        assert 0 <= s.current <= n
