import pytest

from juliart.errors import LexError
from juliart.scene.lexer import Token, tokenize


def kinds(source):
    return [t.kind for t in tokenize(source)]


def texts(source):
    return [t.text for t in tokenize(source)[:-1]]


class TestBasics:
    def test_empty_source_is_just_eof(self):
        toks = tokenize("")
        assert len(toks) == 1
        assert toks[0] == Token("EOF", "", 1, 1)

    def test_keywords_vs_idents(self):
        toks = tokenize("startshape shape loop if else shapely LOOP If")
        assert [t.kind for t in toks[:-1]] == ["KEYWORD"] * 5 + ["IDENT"] * 3

    def test_identifier_charset(self):
        toks = tokenize("_a a_b2 SQUARE x9")
        assert [t.kind for t in toks[:-1]] == ["IDENT"] * 4
        assert texts("_a a_b2 SQUARE x9") == ["_a", "a_b2", "SQUARE", "x9"]

    def test_numbers(self):
        toks = tokenize("0 42 3.5 .25 10.")
        assert [t.kind for t in toks[:-1]] == ["NUMBER"] * 5
        assert [t.value for t in toks[:-1]] == [0.0, 42.0, 3.5, 0.25, 10.0]

    def test_number_has_no_sign(self):
        # leading '-' is a separate operator token; the parser owns negation
        toks = tokenize("-7")
        assert [t.kind for t in toks[:-1]] == ["-", "NUMBER"]

    def test_operators_longest_match(self):
        ops = "&& || <= >= == != < > = + - * / ( ) [ ] { } ,"
        toks = tokenize(ops)
        assert [t.kind for t in toks[:-1]] == ops.split()

    def test_adjacent_two_char_ops(self):
        assert kinds("a<=b")[:3] == ["IDENT", "<=", "IDENT"]
        assert kinds("1==2")[:3] == ["NUMBER", "==", "NUMBER"]


class TestPositions:
    def test_line_and_column_tracking(self):
        toks = tokenize("ab cd\n  ef")
        assert (toks[0].line, toks[0].col) == (1, 1)
        assert (toks[1].line, toks[1].col) == (1, 4)
        assert (toks[2].line, toks[2].col) == (2, 3)

    def test_eof_position_after_trailing_newline(self):
        toks = tokenize("x\n")
        assert (toks[-1].line, toks[-1].col) == (2, 1)

    def test_number_start_column(self):
        toks = tokenize("   12.75")
        assert (toks[0].line, toks[0].col) == (1, 4)
        assert toks[0].value == 12.75


class TestComments:
    def test_comment_to_end_of_line(self):
        toks = tokenize("a # everything here vanishes [ } @\nb")
        assert [t.text for t in toks[:-1]] == ["a", "b"]
        assert toks[1].line == 2

    def test_comment_only_file(self):
        assert kinds("# nothing\n# here\n") == ["EOF"]


class TestErrors:
    def test_unexpected_character(self):
        with pytest.raises(LexError) as exc:
            tokenize("shape S {\n  SQUARE[x 1]\n  @ oops\n}")
        err = exc.value
        assert err.kind == "lex"
        assert (err.line, err.col) == (3, 3)
        assert "unexpected character '@'" in err.message

    def test_lone_dot(self):
        with pytest.raises(LexError):
            tokenize("x = . ")

    @pytest.mark.parametrize("ch", ["$", "%", "!", "&", "|", ";", "~"])
    def test_stray_symbols_rejected(self, ch):
        # bare '!', '&', '|' are only valid as halves of two-char operators
        with pytest.raises(LexError):
            tokenize(f"a {ch} b")


def test_full_statement_token_stream():
    toks = tokenize("startshape S\nshape S {\n SQUARE[x 1]\n}\n")
    got = [(t.kind, t.text, t.line, t.col) for t in toks]
    assert got == [
        ("KEYWORD", "startshape", 1, 1),
        ("IDENT", "S", 1, 12),
        ("KEYWORD", "shape", 2, 1),
        ("IDENT", "S", 2, 7),
        ("{", "{", 2, 9),
        ("IDENT", "SQUARE", 3, 2),
        ("[", "[", 3, 8),
        ("IDENT", "x", 3, 9),
        ("NUMBER", "1", 3, 11),
        ("]", "]", 3, 12),
        ("}", "}", 4, 1),
        ("EOF", "", 5, 1),
    ]
