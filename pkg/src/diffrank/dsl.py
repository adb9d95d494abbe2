"""Recursive-descent parser for chain terms, shift terms and CLI commands.

Grammar::

    command  := "construct" recipe option*      recipe := "fixedpoint" | "omega"
              | "classify" option* | "rank" option* | "quotient" option*
              | "verify" suite option*          suite  := "correspondences" | "theorem3" | "all"
    option   := "--chain" chain | "--shift" shift | "--m" INT | "--eta" shift
              | "--n" INT | "--which" WHICH | "--json" PATH | "--cap" INT
    chain    := "finite(" INT ")" | "Q" | "Qnn" | "singleton"
              | "concat(" chain "," chain ")" | "reverse(" chain ")"
    shift    := "identity" | "decrement" | "translate(" RAT ")" | "scale(" RAT ")"
              | "percopy(" shift ")" | "fixzero(" shift ")"
    RAT      := ["-"] INT ["/" INT]
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .chain import (
    DEFAULT_CAP,
    Chain,
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
    ShiftMap,
    Singleton,
    Translate,
)
from .errors import ParseError

RECIPES = ("fixedpoint", "omega")
SUITES = ("correspondences", "theorem3", "all")
WHICH = ("all", "rank", "principal", "sigma", "sigmaprincipal", "intersection")


@dataclass(frozen=True)
class Construct:
    recipe: str
    m: int
    eta: Optional[ShiftMap] = None
    json_path: Optional[str] = None
    cap: int = DEFAULT_CAP


@dataclass(frozen=True)
class Classify:
    chain: Chain
    shift: ShiftMap
    json_path: Optional[str] = None
    cap: int = DEFAULT_CAP


@dataclass(frozen=True)
class Rank:
    chain: Chain
    shift: Optional[ShiftMap] = None
    which: str = "all"
    json_path: Optional[str] = None
    cap: int = DEFAULT_CAP


@dataclass(frozen=True)
class Quotient:
    chain: Chain
    shift: ShiftMap
    json_path: Optional[str] = None
    cap: int = DEFAULT_CAP


@dataclass(frozen=True)
class Verify:
    suite: str
    n: Optional[int] = None
    m: Optional[int] = None
    json_path: Optional[str] = None
    cap: int = DEFAULT_CAP


Command = Union[Construct, Classify, Rank, Quotient, Verify]

# options accepted by each verb; required ones are checked after parsing
_ALLOWED = {
    "construct": {"--m", "--eta"},
    "classify": {"--chain", "--shift"},
    "rank": {"--chain", "--shift", "--which"},
    "quotient": {"--chain", "--shift"},
    "verify": {"--n", "--m"},
}
_REQUIRED = {
    "construct": ("--m",),
    "classify": ("--chain", "--shift"),
    "rank": ("--chain",),
    "quotient": ("--chain", "--shift"),
    "verify": (),
}
_COMMON = {"--json", "--cap"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    # -- low level -------------------------------------------------------

    def error(self, expected: str, at: Optional[int] = None) -> ParseError:
        pos = self.pos if at is None else at
        line = self.text.count("\n", 0, pos) + 1
        column = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        end = pos
        while end < len(self.text) and not self.text[end].isspace():
            end += 1
        return ParseError(pos, line, column, expected, self.text[pos:end])

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def literal(self, token: str) -> None:
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            raise self.error(repr(token))
        self.pos += len(token)

    def word(self, expected: str) -> str:
        """An identifier-like token: letters, digits, ``-`` and ``_``."""
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] in "-_"):
            self.pos += 1
        if start == self.pos:
            raise self.error(expected)
        return self.text[start:self.pos]

    def choice(self, options, expected: str) -> str:
        self.skip_ws()
        start = self.pos
        token = self.word(expected)
        if token not in options:
            raise self.error(expected, start)
        return token

    def integer(self, signed: bool = False) -> int:
        self.skip_ws()
        start = self.pos
        if signed and self.text.startswith("-", self.pos):
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if digits == self.pos:
            raise self.error("integer", start)
        return int(self.text[start:self.pos])

    def rational(self) -> Fraction:
        num = self.integer(signed=True)
        if self.text.startswith("/", self.pos):
            self.pos += 1
            at = self.pos
            den = self.integer()
            if den == 0:
                raise self.error("nonzero denominator", at)
            return Fraction(num, den)
        return Fraction(num)

    def path(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and not self.text[self.pos].isspace():
            self.pos += 1
        if start == self.pos:
            raise self.error("path")
        return self.text[start:self.pos]

    # -- terms -----------------------------------------------------------

    def chain(self) -> Chain:
        self.skip_ws()
        start = self.pos
        name = self.word("chain")
        if name == "finite":
            self.literal("(")
            at = self.pos
            n = self.integer()
            if n < 1:
                raise self.error("positive integer", at)
            self.literal(")")
            return Finite(n)
        if name == "Q":
            return Rationals()
        if name == "Qnn":
            return NonNegRationals()
        if name == "singleton":
            return Singleton()
        if name == "concat":
            self.literal("(")
            self.skip_ws()
            at = self.pos
            index = self.chain()
            if not isinstance(index, (Finite, Singleton)):
                raise self.error("finite index chain", at)
            self.literal(",")
            component = self.chain()
            self.literal(")")
            return Concat(index, component)
        if name == "reverse":
            self.literal("(")
            inner = self.chain()
            self.literal(")")
            return Reverse(inner)
        raise self.error("chain", start)

    def shift(self) -> ShiftMap:
        self.skip_ws()
        start = self.pos
        name = self.word("shift")
        if name == "identity":
            return Identity()
        if name == "decrement":
            return Decrement()
        if name in ("translate", "scale"):
            self.literal("(")
            self.skip_ws()
            at = self.pos
            value = self.rational()
            self.literal(")")
            if name == "translate":
                return Translate(value)
            if value <= 0:
                raise self.error("positive rational", at)
            return Scale(value)
        if name in ("percopy", "fixzero"):
            self.literal("(")
            inner = self.shift()
            self.literal(")")
            return PerCopy(inner) if name == "percopy" else FixZeroPerCopy(inner)
        raise self.error("shift", start)

    # -- commands --------------------------------------------------------

    def command(self) -> Command:
        verb = self.choice(tuple(_ALLOWED), "command (construct, classify, rank, quotient, verify)")
        head = None
        if verb == "construct":
            head = self.choice(RECIPES, "recipe (fixedpoint or omega)")
        elif verb == "verify":
            head = self.choice(SUITES, "suite (correspondences, theorem3 or all)")
        allowed = _ALLOWED[verb] | _COMMON
        values: dict = {}
        while not self.at_end():
            start = self.pos
            if not self.text.startswith("--", self.pos):
                raise self.error("option")
            flag = self.word("option")
            if flag not in allowed:
                raise self.error("option for " + verb, start)
            if flag in values:
                raise self.error("each option at most once", start)
            values[flag] = self.option_value(flag)
        for flag in _REQUIRED[verb]:
            if flag not in values:
                raise self.error(flag)
        common = {"json_path": values.get("--json"), "cap": values.get("--cap", DEFAULT_CAP)}
        if verb == "construct":
            return Construct(head, values["--m"], values.get("--eta"), **common)
        if verb == "classify":
            return Classify(values["--chain"], values["--shift"], **common)
        if verb == "rank":
            return Rank(values["--chain"], values.get("--shift"), values.get("--which", "all"), **common)
        if verb == "quotient":
            return Quotient(values["--chain"], values["--shift"], **common)
        return Verify(head, values.get("--n"), values.get("--m"), **common)

    def option_value(self, flag: str):
        if flag == "--chain":
            return self.chain()
        if flag in ("--shift", "--eta"):
            return self.shift()
        if flag == "--which":
            return self.choice(WHICH, "one of " + ", ".join(WHICH))
        if flag == "--json":
            return self.path()
        self.skip_ws()
        at = self.pos
        value = self.integer()
        if value < 1:
            raise self.error("positive integer", at)
        return value


def parse_chain(text: str) -> Chain:
    p = _Parser(text)
    out = p.chain()
    if not p.at_end():
        raise p.error("end of input")
    return out


def parse_shift(text: str) -> ShiftMap:
    p = _Parser(text)
    out = p.shift()
    if not p.at_end():
        raise p.error("end of input")
    return out


def parse_dsl(text: str) -> Command:
    return _Parser(text).command()


def render(cmd: Command) -> str:
    """Canonical text for a command; ``parse_dsl(render(cmd)) == cmd``."""
    parts = []
    if isinstance(cmd, Construct):
        parts += ["construct", cmd.recipe, "--m", str(cmd.m)]
        if cmd.eta is not None:
            parts += ["--eta", str(cmd.eta)]
    elif isinstance(cmd, Classify):
        parts += ["classify", "--chain", str(cmd.chain), "--shift", str(cmd.shift)]
    elif isinstance(cmd, Rank):
        parts += ["rank", "--chain", str(cmd.chain)]
        if cmd.shift is not None:
            parts += ["--shift", str(cmd.shift)]
        if cmd.which != "all":
            parts += ["--which", cmd.which]
    elif isinstance(cmd, Quotient):
        parts += ["quotient", "--chain", str(cmd.chain), "--shift", str(cmd.shift)]
    elif isinstance(cmd, Verify):
        parts += ["verify", cmd.suite]
        if cmd.n is not None:
            parts += ["--n", str(cmd.n)]
        if cmd.m is not None:
            parts += ["--m", str(cmd.m)]
    else:
        raise TypeError(f"not a command: {cmd!r}")
    if cmd.json_path is not None:
        parts += ["--json", cmd.json_path]
    if cmd.cap != DEFAULT_CAP:
        parts += ["--cap", str(cmd.cap)]
    return " ".join(parts)
