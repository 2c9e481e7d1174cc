"""Parser and canonical serializer for the rule-file dialect (.idr).

One statement per line; ``#`` starts a comment.  A bare entity name declares
an entity with no dependency; ``target <- m1 + m2`` declares a rule whose
minterms are whitespace-separated conjunctions::

    a1 <- b1 + b2      # a1 needs b1, or b2
    a2 <- b1 b2        # a2 needs both b1 and b2
    a5                 # declared, no dependency

Rule labels are assigned in file order starting at 1.  Canonical output has
one line per entity in name order, minterms ordered by (size, literal
names), literals in name order, and single spaces around ``<-`` and ``+``.
"""

from __future__ import annotations

import re
from typing import Optional

from .model import DependencyRule, EntityId, Minterm, Network

__all__ = ["DslError", "parse_network", "format_network"]

_TOKEN = re.compile(r"<-|\+|[A-Za-z][A-Za-z0-9]*|\S")


class DslError(ValueError):
    """Malformed or inconsistent rule file."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


def _lex(code: str, line_no: int) -> list:
    """Tokenize one line into (kind, text, column) triples, 1-based columns."""
    tokens = []
    for m in _TOKEN.finditer(code):
        text, col = m.group(0), m.start() + 1
        if text == "<-":
            tokens.append(("arrow", text, col))
        elif text == "+":
            tokens.append(("plus", text, col))
        elif text[0].isalpha():
            try:
                tokens.append(("entity", EntityId.parse(text), col))
            except ValueError:
                raise DslError(f"not a valid entity name: {text!r}", line_no, col) from None
        else:
            raise DslError(f"unexpected character {text!r}", line_no, col)
    return tokens


def _parse_statement(tokens: list, line_no: int):
    """Return (target, minterm_groups | None); groups are lists of (entity, col)."""
    kind, value, col = tokens[0]
    if kind != "entity":
        raise DslError(f"statement must start with an entity name, found {value!r}", line_no, col)
    target = value
    if len(tokens) == 1:
        return target, None
    kind, value, col = tokens[1]
    if kind != "arrow":
        raise DslError(f"expected '<-' after {target.name!r}", line_no, col)
    groups, current = [], []
    for kind, value, col in tokens[2:]:
        if kind == "entity":
            current.append((value, col))
        elif kind == "plus":
            if not current:
                raise DslError("empty minterm before '+'", line_no, col)
            groups.append(current)
            current = []
        else:
            raise DslError("unexpected '<-'", line_no, col)
    if not current:
        last_col = tokens[-1][2]
        raise DslError("rule ends with an empty minterm", line_no, last_col)
    groups.append(current)
    return target, groups


def parse_network(text: str) -> Network:
    """Parse a rule document into a validated Network.

    Raises DslError (with line/column) on syntax errors, duplicate rule
    targets, minterm literals that no statement declares, and rules that
    reference their own target.
    """
    statements = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        code = raw.split("#", 1)[0]
        tokens = _lex(code, line_no)
        if not tokens:
            continue
        statements.append((line_no, *_parse_statement(tokens, line_no)))

    declared = {target for _, target, _ in statements}
    rule_lines: dict = {}
    rules = []
    label = 0
    for line_no, target, groups in statements:
        if groups is None:
            continue
        if target in rule_lines:
            raise DslError(
                f"duplicate rule for {target.name} (first on line {rule_lines[target]})",
                line_no,
            )
        rule_lines[target] = line_no
        minterms = set()
        for group in groups:
            for ent, col in group:
                if ent == target:
                    raise DslError(f"rule for {target.name} references itself", line_no, col)
                if ent not in declared:
                    raise DslError(f"unknown entity {ent.name!r} in minterm", line_no, col)
            minterms.add(Minterm(ent for ent, _ in group))
        label += 1
        rules.append(DependencyRule(target, minterms, label))

    return Network(
        (e for e in declared if e.side == "a"),
        (e for e in declared if e.side == "b"),
        rules,
    )


def format_network(net: Network) -> str:
    """Render the canonical document; parse(format(net)) equals net.

    Hardened rules (ALWAYS_ALIVE literals) have no textual form and raise.
    """
    lines = []
    for ent in net.entities():
        rule = net.rule_for(ent)
        if rule is None:
            lines.append(ent.name)
            continue
        if rule.hardened:
            raise DslError(
                f"rule for {ent.name} contains the ALWAYS_ALIVE literal and cannot be serialized"
            )
        body = " + ".join(
            " ".join(sorted(l.name for l in mt.literals)) for mt in rule.sorted_minterms()
        )
        lines.append(f"{ent.name} <- {body}")
    return "".join(line + "\n" for line in lines)
