"""Reading and writing networks as text.

Model files use the two-column ``targets, factors`` format: a header line,
then one ``NAME, EXPRESSION`` line per component, ``#`` comments and blank
lines ignored.  Expressions use ``|``/``OR``, ``&``/``AND``, ``!``/``NOT``
(case-insensitive keywords) and parentheses; the constants ``false`` and
``true`` declare input components.

By default expressions must already be disjunctions of literal
conjunctions; with ``normalize=True`` arbitrary and/or/not structure is
accepted and pushed into DNF first.  Either way the resulting clause family
is minimized and validated: a variable mentioned only redundantly (or with
both polarities) is rejected, because the functions this package deals in
have every regulator essential with a fixed sign.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable

from .dynamics import BooleanNetwork, Component, STG
from .errors import (
    DualRegulation,
    DuplicateComponent,
    ModelSyntaxError,
    NotDNFAfterNormalization,
    UnknownVariable,
)
from .neighborhood import HasseSlice
from .shapes import (
    FunctionShape,
    NEGATIVE,
    POSITIVE,
    RegulatorContext,
    clause_indices,
    minimize,
    state_to_string,
)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[|&!()])
    """,
    re.VERBOSE,
)

_KEYWORDS = {"or": "|", "and": "&", "not": "!"}


def _tokenize(text: str, line: int | None = None) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ModelSyntaxError(f"unexpected character {text[pos]!r}", line)
        pos = m.end()
        if m.lastgroup == "ws":
            continue
        tok = m.group()
        if m.lastgroup == "ident":
            tok = _KEYWORDS.get(tok.lower(), tok)
        tokens.append(tok)
    return tokens


# AST nodes: ("var", name) | ("not", node) | ("and", [nodes]) | ("or", [nodes])


class _Parser:
    """Recursive descent over EXPR := TERM ('|' TERM)*, TERM := FACTOR ('&' FACTOR)*,
    FACTOR := '!'? (IDENT | '(' EXPR ')')."""

    def __init__(self, tokens: list[str], line: int | None):
        self.tokens = tokens
        self.i = 0
        self.line = line

    def peek(self) -> str | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ModelSyntaxError("unexpected end of expression", self.line)
        self.i += 1
        return tok

    def parse(self) -> tuple:
        node = self.expr()
        if self.peek() is not None:
            raise ModelSyntaxError(f"trailing input at {self.peek()!r}", self.line)
        return node

    def expr(self) -> tuple:
        terms = [self.term()]
        while self.peek() == "|":
            self.take()
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else ("or", terms)

    def term(self) -> tuple:
        factors = [self.factor()]
        while self.peek() == "&":
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else ("and", factors)

    def factor(self) -> tuple:
        tok = self.take()
        if tok == "!":
            return ("not", self.factor())
        if tok == "(":
            node = self.expr()
            if self.take() != ")":
                raise ModelSyntaxError("expected ')'", self.line)
            return node
        if tok in ("|", "&", ")"):
            raise ModelSyntaxError(f"unexpected {tok!r}", self.line)
        return ("var", tok)


def _to_nnf(node: tuple, negate: bool = False) -> tuple:
    kind = node[0]
    if kind == "var":
        return ("not", node) if negate else node
    if kind == "not":
        return _to_nnf(node[1], not negate)
    kids = [_to_nnf(k, negate) for k in node[1]]
    if (kind == "and") != negate:
        return ("and", kids)
    return ("or", kids)


def _distribute(node: tuple) -> list[list[tuple]]:
    """NNF → list of clauses, each a list of literal nodes."""
    kind = node[0]
    if kind in ("var", "not"):
        return [[node]]
    if kind == "or":
        out = []
        for k in node[1]:
            out.extend(_distribute(k))
        return out
    # and: cartesian product of the children's clause lists
    prod: list[list[tuple]] = [[]]
    for k in node[1]:
        kid = _distribute(k)
        prod = [a + b for a in prod for b in kid]
    return prod


def _strict_clauses(node: tuple, line: int | None) -> list[list[tuple]]:
    """Literal clause lists for an expression required to already be DNF."""

    def literal(n: tuple) -> tuple:
        if n[0] == "var":
            return n
        if n[0] == "not" and n[1][0] == "var":
            return n
        raise NotDNFAfterNormalization(
            "negation applies to a whole subexpression; "
            "pass --normalize to rewrite it",
            line,
        )

    def term(n: tuple) -> list[tuple]:
        if n[0] == "and":
            return [literal(k) for k in n[1]]
        return [literal(n)]

    if node[0] == "or":
        return [term(k) for k in node[1]]
    return [term(node)]


@dataclass(frozen=True)
class ParsedFunction:
    """A shape with its sign context and regulator names (appearance order)."""

    shape: FunctionShape
    ctx: RegulatorContext
    names: tuple[str, ...]


def parse_expression(
    text: str, normalize: bool = False, line: int | None = None,
    self_name: str | None = None,
) -> ParsedFunction:
    """Parse one expression into (shape, context, regulator names).

    Regulators are numbered by first appearance in the text.  Rejects dual
    regulation (a variable both plain and negated) and redundancy (a
    variable whose every clause is absorbed), since either would break
    consistency.  ``self_name`` marks autoregulation in the context.
    """
    tokens = _tokenize(text, line)
    if not tokens:
        raise ModelSyntaxError("empty expression", line)
    ast = _Parser(tokens, line).parse()
    if normalize:
        clause_nodes = _distribute(_to_nnf(ast))
    else:
        clause_nodes = _strict_clauses(ast, line)

    names: list[str] = []
    signs: dict[str, int] = {}
    clause_sets: list[set[int]] = []
    for nodes in clause_nodes:
        idxs: set[int] = set()
        for lit in nodes:
            neg = lit[0] == "not"
            name = lit[1][1] if neg else lit[1]
            sign = NEGATIVE if neg else POSITIVE
            if name not in signs:
                signs[name] = sign
                names.append(name)
            elif signs[name] != sign:
                raise DualRegulation(
                    f"{name} is used both plain and negated", line
                )
            idxs.add(names.index(name) + 1)
        clause_sets.append(idxs)
    shape = minimize(clause_sets, len(names))
    sig = tuple(signs[n] for n in names)
    self_index = names.index(self_name) + 1 if self_name in names else None
    return ParsedFunction(shape, RegulatorContext(sig, self_index), tuple(names))


_HEADER_RE = re.compile(r"^\s*targets\s*,\s*factors\s*$", re.IGNORECASE)
_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def parse_model(text: str, normalize: bool = False) -> BooleanNetwork:
    """Parse a whole ``targets, factors`` model into a network."""
    entries: list[tuple[int, str, str]] = []  # (line number, name, rhs)
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not header_seen:
            if not _HEADER_RE.match(line):
                raise ModelSyntaxError("expected 'targets, factors' header", lineno)
            header_seen = True
            continue
        if "," not in line:
            raise ModelSyntaxError("expected 'name, expression'", lineno)
        name, rhs = line.split(",", 1)
        name = name.strip()
        if not _NAME_RE.match(name):
            raise ModelSyntaxError(f"bad component name {name!r}", lineno)
        entries.append((lineno, name, rhs.strip()))
    if not header_seen:
        raise ModelSyntaxError("empty model: no 'targets, factors' header")

    order: dict[str, int] = {}
    for lineno, name, _ in entries:
        if name in order:
            raise DuplicateComponent(f"{name} declared twice", lineno)
        order[name] = len(order)

    comps: list[Component] = []
    for lineno, name, rhs in entries:
        lowered = rhs.lower()
        if lowered in ("false", "true"):
            comps.append(Component(name=name, constant=lowered == "true"))
            continue
        pf = parse_expression(rhs, normalize=normalize, line=lineno, self_name=name)
        try:
            regs = tuple(order[r] for r in pf.names)
        except KeyError as exc:
            raise UnknownVariable(
                f"{exc.args[0]} is not a declared component", lineno
            ) from None
        comps.append(
            Component(name=name, regulators=regs, shape=pf.shape, ctx=pf.ctx)
        )
    return BooleanNetwork(tuple(comps))


def load_model(path: str, normalize: bool = False) -> BooleanNetwork:
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read(), normalize=normalize)


# ---------------------------------------------------------------------------
# Rendering


def render_expression(
    shape: FunctionShape, ctx: RegulatorContext, names: tuple[str, ...] | None = None
) -> str:
    """Expression text for a shape: clauses &-joined, |-separated.

    Multi-literal clauses are parenthesized when there are several clauses.
    Default names are s1..sp.
    """
    if names is None:
        names = tuple(f"s{k + 1}" for k in range(shape.arity))
    if len(names) != shape.arity:
        raise ValueError("one name per regulator required")
    parts = []
    many = len(shape.clauses) > 1
    for idxs in shape.index_sets():
        lits = [
            ("!" if ctx.signs[i - 1] == NEGATIVE else "") + names[i - 1]
            for i in idxs
        ]
        body = " & ".join(lits)
        parts.append(f"({body})" if many and len(lits) > 1 else body)
    return " | ".join(parts)


def render_model(bn: BooleanNetwork) -> str:
    """Model text for a network; parses back to an equal network."""
    lines = ["targets, factors"]
    for c in bn.components:
        if c.shape is None:
            rhs = "true" if c.constant else "false"
        else:
            names = tuple(bn.components[r].name for r in c.regulators)
            rhs = render_expression(c.shape, c.ctx, names)
        lines.append(f"{c.name}, {rhs}")
    return "\n".join(lines) + "\n"


def network_to_json(bn: BooleanNetwork) -> str:
    """Deterministic JSON description of a network."""
    comps = []
    for c in bn.components:
        if c.shape is None:
            comps.append(
                {"name": c.name, "regulators": [], "function": str(bool(c.constant)).lower()}
            )
            continue
        regs = [
            {
                "name": bn.components[r].name,
                "sign": "+" if c.ctx.signs[k] == POSITIVE else "-",
            }
            for k, r in enumerate(c.regulators)
        ]
        names = tuple(bn.components[r].name for r in c.regulators)
        comps.append(
            {
                "name": c.name,
                "regulators": regs,
                "function": render_expression(c.shape, c.ctx, names),
                "clauses": [list(s) for s in c.shape.index_sets()],
            }
        )
    return json.dumps({"components": comps}, indent=2)


def stg_to_dot(stg: STG, names: Iterable[str] | None = None) -> str:
    """GraphViz text for a transition graph; stable states get double circles."""
    n = stg.n
    label = ", ".join(names) if names else None
    lines = ["digraph stg {"]
    if label:
        lines.append(f'  label="components: {label}";')
    lines.append("  node [shape=circle];")
    stable = set(stg.stable_states())
    for s in range(1 << n):
        shape = "doublecircle" if s in stable else "circle"
        lines.append(f'  "{state_to_string(s, n)}" [shape={shape}];')
    for s in range(1 << n):
        for t in stg.successors[s]:
            lines.append(
                f'  "{state_to_string(s, n)}" -> "{state_to_string(t, n)}";'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def slice_to_dot(sl: HasseSlice) -> str:
    """GraphViz text for a local neighborhood (edges point upward)."""
    lines = ["digraph neighborhood {", "  rankdir=BT;", "  node [shape=box];"]
    center = str(sl.center)
    lines.append(f'  "{center}" [style=bold];')
    for st in sl.parents:
        lines.append(f'  "{center}" -> "{st.shape}" [label="{st.rule} d{st.delta}"];')
    for st in sl.children:
        lines.append(f'  "{st.shape}" -> "{center}" [label="{st.rule} d{st.delta}"];')
    for sib in sl.siblings:
        lines.append(f'  "{sib}" [style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
