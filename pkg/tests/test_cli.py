import io
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diffrank.chain import (
    Concat,
    Decrement,
    Finite,
    FixZeroPerCopy,
    Identity,
    NonNegRationals,
    PerCopy,
    Rationals,
    Reverse,
    Scale,
    Singleton,
    Translate,
)
from diffrank.cli import main, run
from diffrank.dsl import (
    Classify,
    Construct,
    Quotient,
    Rank,
    Verify,
    parse_chain,
    parse_dsl,
    parse_shift,
    render,
)
from diffrank.errors import ParseError


class TestParse:
    def test_rank(self):
        assert parse_dsl("rank --chain finite(3)") == Rank(Finite(3), which="all")

    def test_quotient(self):
        cmd = parse_dsl("quotient --chain concat(finite(3),Q) --shift percopy(translate(-1/1))")
        assert cmd == Quotient(Concat(Finite(3), Rationals()), PerCopy(Translate(-1)))

    def test_unterminated(self):
        with pytest.raises(ParseError) as info:
            parse_dsl("rank --chain finite(")
        assert info.value.column == 21
        assert info.value.expected == "integer"

    def test_line_tracking(self):
        with pytest.raises(ParseError) as info:
            parse_dsl("construct omega\n  --m x")
        assert (info.value.line, info.value.column) == (2, 7)

    def test_rationals_canonicalized(self):
        assert parse_shift("scale(4/2)") == Scale(2)
        assert parse_shift("translate(-3)") == Translate(-3)

    @pytest.mark.parametrize("text", [
        "rank", "construct spiral --m 2", "rank --chain finite(0)", "scale(1/0)",
        "classify --chain Q", "rank --chain Q --chain Q", "verify all --chain Q",
        "construct omega --m 2 extra", "rank --chain concat(Q,Q)"])
    def test_errors(self, text):
        with pytest.raises(ParseError):
            parse_dsl(text)

    def test_terms(self):
        assert parse_chain("reverse(concat(singleton, Qnn))") == Reverse(Concat(Singleton(), NonNegRationals()))
        assert parse_shift("fixzero(scale(3/2))") == FixZeroPerCopy(Scale(Fraction(3, 2)))
        assert parse_shift("decrement") == Decrement()


chains = st.recursive(
    st.sampled_from([Finite(1), Finite(4), Rationals(), NonNegRationals(), Singleton()]),
    lambda inner: st.one_of(
        st.builds(Reverse, inner),
        st.builds(Concat, st.sampled_from([Finite(2), Singleton()]), inner)),
    max_leaves=4)
rats = st.fractions(min_value=-9, max_value=9, max_denominator=5)
shifts = st.recursive(
    st.one_of(st.just(Identity()), st.just(Decrement()), st.builds(Translate, rats),
              st.builds(Scale, st.fractions(min_value=Fraction(1, 5), max_value=9, max_denominator=5))),
    lambda inner: st.one_of(st.builds(PerCopy, inner), st.builds(FixZeroPerCopy, inner)),
    max_leaves=3)
common = {"json_path": st.one_of(st.none(), st.just("out.jsonl")), "cap": st.integers(1, 200)}
commands = st.one_of(
    st.builds(Construct, st.sampled_from(["fixedpoint", "omega"]), st.integers(1, 9),
              st.one_of(st.none(), shifts), **common),
    st.builds(Classify, chains, shifts, **common),
    st.builds(Rank, chains, st.one_of(st.none(), shifts),
              st.sampled_from(["all", "rank", "principal", "sigma", "sigmaprincipal", "intersection"]), **common),
    st.builds(Quotient, chains, shifts, **common),
    st.builds(Verify, st.sampled_from(["correspondences", "theorem3", "all"]),
              st.one_of(st.none(), st.integers(1, 8)), st.one_of(st.none(), st.integers(1, 6)), **common),
)


@given(commands)
def test_round_trip(cmd):
    assert parse_dsl(render(cmd)) == cmd


class TestRun:
    def run_text(self, text, tmp_path):
        out = tmp_path / "report.jsonl"
        buf = io.StringIO()
        code = run(parse_dsl(f"{text} --json {out}"), stdout=buf, stderr=buf)
        records = [json.loads(line) for line in out.read_text().splitlines()] if out.exists() else []
        return code, buf.getvalue(), records

    def test_construct_omega(self, tmp_path):
        code, prose, records = self.run_text("construct omega --m 3", tmp_path)
        assert code == 0
        rank = next(r for r in records if r["property"] == "principal_sigma_rank")
        assert rank["witness"]["order_type"] == "finite(3)"
        assert "principal_sigma_rank = finite(3)" in prose

    def test_verify_correspondences(self, tmp_path):
        code, _, records = self.run_text("verify correspondences --n 5", tmp_path)
        assert code == 0
        assert records and all(r["status"] == "pass" for r in records)

    def test_classify(self, tmp_path):
        code, _, records = self.run_text("classify --chain Q --shift translate(-1/1)", tmp_path)
        assert code == 0
        chain_level = next(r for r in records if r["property"] == "omega_increasing_chain_level")
        assert chain_level["witness"] == {"strict_left_shift": True}

    def test_usage_error(self, tmp_path):
        code, prose, _ = self.run_text("construct fixedpoint --m 2 --eta identity", tmp_path)
        assert code == 2 and "error" in prose

    def test_sigma_kind_needs_shift(self, tmp_path):
        code, _, _ = self.run_text("rank --chain finite(3) --which sigma", tmp_path)
        assert code == 2

    def test_main_parse_error(self, capsys):
        assert main(["rank", "--chain", "finite("]) == 2
        assert "column 21" in capsys.readouterr().err

    def test_main_help(self, capsys):
        assert main(["--help"]) == 0
        assert "usage" in capsys.readouterr().out
        assert main([]) == 2

    def test_json_to_stdout(self, capsys):
        assert main(["rank", "--chain", "finite(2)", "--json", "-"]) == 0
        captured = capsys.readouterr()
        lines = captured.out.splitlines()
        assert len(lines) == 2 and all(json.loads(x)["status"] == "pass" for x in lines)
        assert "ranks of finite(2)" in captured.err
