import pytest

from juliart.errors import LexError, ParseError
from juliart.scene import ast
from juliart.scene.parser import parse, parse_expression

MINIMAL = "startshape S\nshape S {\n  SQUARE[x 1]\n}\n"


class TestExpressions:
    def test_precedence_mul_over_add(self):
        got = parse_expression("1 + 2 * 3")
        assert got == ast.Binary("+", ast.Num(1), ast.Binary("*", ast.Num(2), ast.Num(3)))

    def test_precedence_add_over_compare(self):
        got = parse_expression("1 < 2 + 3")
        assert got == ast.Binary("<", ast.Num(1), ast.Binary("+", ast.Num(2), ast.Num(3)))

    def test_precedence_compare_over_and_over_or(self):
        got = parse_expression("a || b && c == d")
        assert got == ast.Binary(
            "||",
            ast.Name("a"),
            ast.Binary("&&", ast.Name("b"), ast.Binary("==", ast.Name("c"), ast.Name("d"))),
        )

    def test_left_associativity(self):
        got = parse_expression("10 - 4 - 3")
        assert got == ast.Binary("-", ast.Binary("-", ast.Num(10), ast.Num(4)), ast.Num(3))
        got = parse_expression("8 / 4 / 2")
        assert got == ast.Binary("/", ast.Binary("/", ast.Num(8), ast.Num(4)), ast.Num(2))

    def test_unary_minus_binds_tightest(self):
        got = parse_expression("-a * b")
        assert got == ast.Binary("*", ast.Unary("-", ast.Name("a")), ast.Name("b"))
        assert parse_expression("- -3") == ast.Unary("-", ast.Unary("-", ast.Num(3)))

    def test_parens_override(self):
        got = parse_expression("(1 + 2) * 3")
        assert got == ast.Binary("*", ast.Binary("+", ast.Num(1), ast.Num(2)), ast.Num(3))

    def test_cond_expression(self):
        got = parse_expression("if(x > 0, x, -x)")
        assert got == ast.Cond(
            ast.Binary(">", ast.Name("x"), ast.Num(0)),
            ast.Name("x"),
            ast.Unary("-", ast.Name("x")),
        )

    def test_rand_expression(self):
        assert parse_expression("rand(0, 1)") == ast.Rand(ast.Num(0), ast.Num(1))

    @pytest.mark.parametrize("src", ["rand(1)", "rand(1, 2, 3)", "rand()"])
    def test_rand_arity_enforced(self, src):
        with pytest.raises(ParseError, match="rand takes 2 arguments"):
            parse_expression(src)

    def test_function_call(self):
        got = parse_expression("f(1, g(2))")
        assert got == ast.FuncCall("f", (ast.Num(1), ast.FuncCall("g", (ast.Num(2),))))

    def test_positions_do_not_affect_equality(self):
        assert parse_expression("1+2*x") == parse_expression("  1 + 2   * x ")

    def test_trailing_tokens_rejected(self):
        with pytest.raises(ParseError, match="expected end of expression"):
            parse_expression("1 2")


class TestAdjustments:
    def square(self, body):
        prog = parse(f"startshape S\nshape S {{\n  SQUARE[{body}]\n}}\n")
        return prog.shapes()["S"].body[0]

    def test_empty_list(self):
        assert self.square("").adjustments == ()

    def test_alias_folding(self):
        sq = self.square("s 2 hue 10 saturation 0.5 brightness 0.25")
        assert [a.kind for a in sq.adjustments] == ["size", "h", "sat", "b"]

    def test_size_takes_optional_second_value(self):
        sq = self.square("size 1 2")
        assert sq.adjustments == (ast.Adjustment("size", (ast.Num(1), ast.Num(2))),)

    def test_size_second_value_stops_at_keyword(self):
        sq = self.square("size 1 x 2")
        assert [a.kind for a in sq.adjustments] == ["size", "x"]
        assert len(sq.adjustments[0].args) == 1

    def test_single_value_kinds_reject_second_plain_number(self):
        with pytest.raises(ParseError, match="expected adjustment keyword"):
            self.square("x 1 2")

    def test_expression_arguments(self):
        sq = self.square("x i * 0.5 y -q r 45")
        assert sq.adjustments[0].args[0] == ast.Binary("*", ast.Name("i"), ast.Num(0.5))
        assert sq.adjustments[1].args[0] == ast.Unary("-", ast.Name("q"))


class TestStatements:
    def shape_body(self, body):
        return parse(f"startshape S\nshape S {{\n{body}\n}}\n").shapes()["S"].body

    def test_fill(self):
        (st,) = self.shape_body("  FILL[b 1]")
        assert isinstance(st, ast.Fill)

    def test_bind(self):
        (st,) = self.shape_body("  q = 1 + 2")
        assert st == ast.Bind("q", ast.Binary("+", ast.Num(1), ast.Num(2)))

    def test_shape_call_requires_adjustments(self):
        (st,) = self.shape_body("  T(1)[x 2]")
        assert st == ast.ShapeCall("T", (ast.Num(1),), (ast.Adjustment("x", (ast.Num(2),)),))

    def test_loop_anonymous(self):
        (st,) = self.shape_body("  loop 4 [x 1] { SQUARE[] }")
        assert st.var is None
        assert st.count == ast.Num(4)
        assert st.adjustments == (ast.Adjustment("x", (ast.Num(1),)),)

    def test_loop_with_variable(self):
        (st,) = self.shape_body("  loop i = n [] { SQUARE[x i] }")
        assert st.var == "i"
        assert st.count == ast.Name("n")

    def test_loop_count_may_be_plain_name(self):
        # `loop n [...]` must read n as the count, not a loop variable
        (st,) = self.shape_body("  loop n [x 1] { SQUARE[] }")
        assert st.var is None
        assert st.count == ast.Name("n")

    def test_if_statement_with_else(self):
        (st,) = self.shape_body("  if (q > 0) { SQUARE[] } else { FILL[] }")
        assert isinstance(st, ast.IfStmt)
        assert isinstance(st.then_body[0], ast.Square)
        assert isinstance(st.else_body[0], ast.Fill)

    def test_if_statement_without_else(self):
        (st,) = self.shape_body("  if (q) { SQUARE[] }")
        assert st.else_body == ()


class TestTopLevel:
    def test_minimal_program(self):
        prog = parse(MINIMAL)
        assert prog.start == ast.StartShape("S", ())
        assert list(prog.shapes()) == ["S"]

    def test_startshape_with_args(self):
        prog = parse("startshape S(1, 2)\nshape S(a, b) { SQUARE[x a] }\n")
        assert prog.start.args == (ast.Num(1), ast.Num(2))
        assert prog.shapes()["S"].params == ("a", "b")

    def test_const_and_func_defs(self):
        prog = parse("N = 10\nf(x) = x * x\ng() = 5\nstartshape S\nshape S { SQUARE[] }\n")
        assert prog.constants()["N"].value == ast.Num(10)
        assert prog.functions()["f"] == ast.FuncDef("f", ("x",), ast.Binary("*", ast.Name("x"), ast.Name("x")))
        assert prog.functions()["g"].params == ()

    def test_items_keep_source_order(self):
        prog = parse("A = 1\nstartshape S\nB = 2\nshape S { SQUARE[] }\n")
        assert [type(it).__name__ for it in prog.items] == [
            "ConstDef",
            "StartShape",
            "ConstDef",
            "ShapeDef",
        ]


class TestDiagnostics:
    """Exact positions and wording for broken inputs; the service and CLI
    surface these verbatim."""

    def test_missing_adjustment_value(self):
        src = "startshape S\nshape S {\n  SQUARE[x]\n}\n"
        with pytest.raises(ParseError) as exc:
            parse(src)
        err = exc.value
        assert err.kind == "syntax"
        assert (err.line, err.col) == (3, 11)
        assert err.message == "expected expression, found ']'"

    def test_doubled_closing_bracket(self):
        src = "startshape S\nshape S {\n  SQUARE[x 1]]\n}\n"
        with pytest.raises(ParseError) as exc:
            parse(src)
        err = exc.value
        assert (err.line, err.col) == (3, 14)
        assert err.message == "expected statement, found ']'"

    def test_unterminated_expression_points_at_next_item(self):
        src = "startshape S\nA = (1 +\nshape S {\n  SQUARE[x 1]\n}\n"
        with pytest.raises(ParseError) as exc:
            parse(src)
        err = exc.value
        assert (err.line, err.col) == (3, 1)
        assert err.message == "expected expression, found 'shape'"

    def test_lex_error_position(self):
        src = "startshape S\nshape S {\n  SQUARE[x @]\n}\n"
        with pytest.raises(LexError) as exc:
            parse(src)
        err = exc.value
        assert err.kind == "lex"
        assert (err.line, err.col) == (3, 12)
        assert err.message == "unexpected character '@'"

    def test_eof_reported_in_words(self):
        with pytest.raises(ParseError, match="end of input"):
            parse("startshape S\nshape S {\n  SQUARE[x 1]\n")

    def test_bad_top_level_item(self):
        with pytest.raises(ParseError, match="expected startshape, shape, constant or function"):
            parse("123\n")


class TestCorpus:
    def test_all_presets_parse(self, corpus):
        for name, source in corpus.items():
            prog = parse(source)
            assert prog.start is not None, name
            assert prog.shapes(), name
