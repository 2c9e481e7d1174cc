"""Time-indexed 0/1 program for the cascade with budgeted rule hardening.

Builds the binary model (a failure indicator per entity and time step, one
indicator per multi-literal minterm via virtual entities, one hardening
indicator per rule), serializes it in the standard LP text format, and
checks candidate assignments without an external solver.

Variable naming: x_<i>_<d> and y_<j>_<d> for side-a / side-b entities,
c_<k>_<d> for virtual entities, m_<label> for rule hardenings.  The model
horizon is 2(|A|+|B|): virtual entities add one step of propagation latency
over the direct simulation, and the doubled horizon guarantees the fixed
point is representable.

Constraint families (names as emitted):

* init_*    - entity failure at d=0 is forced by attack membership.
* mono_*    - failure indicators never decrease over time.
* vlo_/vhi_ - a virtual entity fails exactly when some conjunct failed one
              step earlier.
* rlo_/rhi_ - a rule's target fails exactly when every disjunct failed one
              step earlier and the rule is not hardened; the hardening
              indicator acts as an extra never-failing disjunct, and
              initially attacked targets are exempt from the upper bound
              (an attack cannot be undone by hardening).
* budget    - exactly s hardenings.

The objective sums the terminal failure indicators of the non-attacked
entities, so its value is the number of induced failures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Mapping

from .model import EntityId, Network, ValidationError

__all__ = [
    "Constraint",
    "VirtualEntity",
    "RuleRow",
    "IlpModel",
    "CheckReport",
    "build_ilp",
    "write_lp",
    "check_assignment",
    "transcribe_cascade",
    "sidecar_data",
]


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple  # ((coefficient, variable), ...)
    sense: str  # "<=", ">=", "="
    rhs: int


@dataclass(frozen=True)
class VirtualEntity:
    vid: int
    conjuncts: tuple  # EntityIds of the replaced minterm


@dataclass(frozen=True)
class RuleRow:
    label: int
    target: EntityId
    disjuncts: tuple  # variable bases: "x_3", "y_1", "c_2"


@dataclass(frozen=True)
class IlpModel:
    entities_a: tuple
    entities_b: tuple
    attacked: frozenset
    horizon: int
    s: int
    virtuals: tuple
    rule_rows: tuple
    variables: tuple
    constraints: tuple
    objective: tuple  # ((coefficient, variable), ...)

    def constraint_counts(self) -> Dict[str, int]:
        counts: Dict[str, int] = {"init": 0, "mono": 0, "virtual": 0, "rule": 0, "budget": 0}
        for c in self.constraints:
            if c.name.startswith("init_"):
                counts["init"] += 1
            elif c.name.startswith("mono_"):
                counts["mono"] += 1
            elif c.name.startswith(("vlo_", "vhi_")):
                counts["virtual"] += 1
            elif c.name.startswith(("rlo_", "rhi_")):
                counts["rule"] += 1
            else:
                counts["budget"] += 1
        return counts


def _base(e: EntityId) -> str:
    return ("x_" if e.side == "a" else "y_") + str(e.index)


def build_ilp(net: Network, attacked: Iterable[EntityId], s: int) -> IlpModel:
    """Construct the model for this network, attack, and hardening budget."""
    attacked = frozenset(attacked)
    for e in attacked:
        if e not in net.universe:
            raise ValidationError(f"unknown entity {e} in attack set")
    rules = net.rules
    if not isinstance(s, int) or isinstance(s, bool) or s < 0:
        raise ValueError(f"budget s must be a non-negative integer, got {s!r}")
    if s > len(rules):
        raise ValueError(f"budget s={s} exceeds the rule count {len(rules)}")
    for rule in rules:
        if rule.hardened:
            raise ValidationError(
                f"rule for {rule.target} already carries an ALWAYS_ALIVE literal; "
                "build the model from the unmodified network"
            )

    ents_a = tuple(sorted(net.entities_a))
    ents_b = tuple(sorted(net.entities_b))
    T = 2 * (len(ents_a) + len(ents_b))

    virtuals = []
    rule_rows = []
    for rule in rules:
        disjuncts = []
        for mt in rule.sorted_minterms():
            ents = tuple(sorted(mt.entities))
            if len(ents) == 1:
                disjuncts.append(_base(ents[0]))
            else:
                virtuals.append(VirtualEntity(vid=len(virtuals) + 1, conjuncts=ents))
                disjuncts.append(f"c_{len(virtuals)}")
        rule_rows.append(RuleRow(label=rule.label, target=rule.target, disjuncts=tuple(disjuncts)))

    variables = []
    for e in ents_a + ents_b:
        variables.extend(f"{_base(e)}_{d}" for d in range(T + 1))
    for v in virtuals:
        variables.extend(f"c_{v.vid}_{d}" for d in range(T + 1))
    variables.extend(f"m_{r.label}" for r in rule_rows)

    constraints = []
    for e in ents_a + ents_b:
        g = 1 if e in attacked else 0
        constraints.append(
            Constraint(f"init_{_base(e)}", ((1, f"{_base(e)}_0"),), ">=", g)
        )
    for e in ents_a + ents_b:
        b = _base(e)
        for d in range(1, T + 1):
            constraints.append(
                Constraint(f"mono_{b}_{d}", ((1, f"{b}_{d}"), (-1, f"{b}_{d - 1}")), ">=", 0)
            )
    for v in virtuals:
        N = len(v.conjuncts)
        for d in range(1, T + 1):
            prev = tuple((-1, f"{_base(e)}_{d - 1}") for e in v.conjuncts)
            constraints.append(
                Constraint(f"vlo_{v.vid}_{d}", ((N, f"c_{v.vid}_{d}"),) + prev, ">=", 0)
            )
            constraints.append(
                Constraint(f"vhi_{v.vid}_{d}", ((1, f"c_{v.vid}_{d}"),) + prev, "<=", 0)
            )
    for row in rule_rows:
        n = len(row.disjuncts)
        tb = _base(row.target)
        g = 1 if row.target in attacked else 0
        mv = f"m_{row.label}"
        for d in range(1, T + 1):
            prev = tuple((-1, f"{db}_{d - 1}") for db in row.disjuncts)
            constraints.append(
                Constraint(
                    f"rlo_{row.label}_{d}", ((1, f"{tb}_{d}"),) + prev + ((1, mv),), ">=", 1 - n
                )
            )
            constraints.append(
                Constraint(
                    f"rhi_{row.label}_{d}",
                    ((n + 1, f"{tb}_{d}"),) + prev + ((1, mv),),
                    "<=",
                    1 + (n + 1) * g,
                )
            )
    constraints.append(
        Constraint("budget", tuple((1, f"m_{r.label}") for r in rule_rows), "=", s)
    )

    objective = tuple(
        (1, f"{_base(e)}_{T}") for e in ents_a + ents_b if e not in attacked
    )
    return IlpModel(
        entities_a=ents_a,
        entities_b=ents_b,
        attacked=attacked,
        horizon=T,
        s=s,
        virtuals=tuple(virtuals),
        rule_rows=tuple(rule_rows),
        variables=tuple(variables),
        constraints=tuple(constraints),
        objective=objective,
    )


def transcribe_cascade(model: IlpModel, modified_labels: Iterable[int] = ()) -> Dict[str, int]:
    """Assignment realizing the cascade when the given rules are hardened.

    Propagates synchronously over entities *and* virtual entities with the
    model's own one-step-per-hop timing, which is what the constraints
    encode (a multi-literal minterm costs one extra step compared to the
    direct simulation; the doubled horizon absorbs it).
    """
    modified = frozenset(modified_labels)
    known = {row.label for row in model.rule_rows}
    unknown = modified - known
    if unknown:
        raise ValidationError(f"unknown rule labels {sorted(unknown)}")

    entity_bases = [_base(e) for e in model.entities_a + model.entities_b]
    virtual_bases = [f"c_{v.vid}" for v in model.virtuals]
    conj = {f"c_{v.vid}": [_base(e) for e in v.conjuncts] for v in model.virtuals}
    rule_of = {_base(r.target): r for r in model.rule_rows}

    failed = {b: False for b in entity_bases + virtual_bases}
    for e in model.attacked:
        failed[_base(e)] = True

    assignment: Dict[str, int] = {}
    for b, f in failed.items():
        assignment[f"{b}_0"] = int(f)
    for d in range(1, model.horizon + 1):
        now = dict(failed)
        for b in virtual_bases:
            if not now[b] and any(failed[cb] for cb in conj[b]):
                now[b] = True
        for b in entity_bases:
            row = rule_of.get(b)
            if row is None or now[b] or row.label in modified:
                continue
            if row.disjuncts and all(failed[db] for db in row.disjuncts):
                now[b] = True
        failed = now
        for b, f in failed.items():
            assignment[f"{b}_{d}"] = int(f)
    for row in model.rule_rows:
        assignment[f"m_{row.label}"] = int(row.label in modified)
    return assignment


@dataclass(frozen=True)
class CheckReport:
    feasible: bool
    violations: tuple  # (constraint name, lhs, sense, rhs)
    objective: int


def check_assignment(model: IlpModel, assignment: Mapping[str, int]) -> CheckReport:
    """Evaluate every constraint; report violations and the objective value."""
    missing = [v for v in model.variables if v not in assignment]
    if missing:
        raise ValueError(f"assignment is missing {len(missing)} variables, e.g. {missing[:3]}")
    for v in model.variables:
        if assignment[v] not in (0, 1):
            raise ValueError(f"variable {v} must be 0 or 1, got {assignment[v]!r}")
    violations = []
    for c in model.constraints:
        lhs = sum(coef * assignment[var] for coef, var in c.terms)
        ok = (
            lhs <= c.rhs
            if c.sense == "<="
            else lhs >= c.rhs if c.sense == ">=" else lhs == c.rhs
        )
        if not ok:
            violations.append((c.name, lhs, c.sense, c.rhs))
    objective = sum(coef * assignment[var] for coef, var in model.objective)
    return CheckReport(feasible=not violations, violations=tuple(violations), objective=objective)


def _render_terms(terms) -> str:
    if not terms:
        return "0"
    parts = []
    for i, (coef, var) in enumerate(terms):
        mag = abs(coef)
        body = var if mag == 1 else f"{mag} {var}"
        if i == 0:
            parts.append(body if coef > 0 else f"- {body}")
        else:
            parts.append(("+ " if coef > 0 else "- ") + body)
    return " ".join(parts)


def write_lp(model: IlpModel) -> str:
    """Serialize in LP format: Minimize / Subject To / Bounds / Binary / End.

    Byte-deterministic for a given model.  The budget constraint is skipped
    in the text when the network has no rules (an empty left-hand side has
    no LP syntax); the model object still carries it.
    """
    lines = ["Minimize"]
    obj_terms = [var for _, var in model.objective]
    if obj_terms:
        # wrap long objectives; solvers dislike very long lines
        for i in range(0, len(obj_terms), 10):
            chunk = " + ".join(obj_terms[i : i + 10])
            prefix = " obj: " if i == 0 else "      + "
            lines.append(prefix + chunk)
    else:
        lines.append(" obj: 0 " + model.variables[0] if model.variables else " obj:")
    lines.append("Subject To")
    for c in model.constraints:
        if not c.terms:
            continue
        lines.append(f" {c.name}: {_render_terms(c.terms)} {c.sense} {c.rhs}")
    lines.append("Bounds")
    lines.extend(f" 0 <= {v} <= 1" for v in model.variables)
    lines.append("Binary")
    lines.extend(f" {v}" for v in model.variables)
    lines.append("End")
    return "".join(line + "\n" for line in lines)


def sidecar_data(model: IlpModel) -> dict:
    """Decoder mapping for external solver output: variable -> meaning."""
    variables: Dict[str, dict] = {}
    for e in model.entities_a + model.entities_b:
        b = _base(e)
        for d in range(model.horizon + 1):
            variables[f"{b}_{d}"] = {"kind": "entity", "entity": e.name, "t": d}
    for v in model.virtuals:
        for d in range(model.horizon + 1):
            variables[f"c_{v.vid}_{d}"] = {
                "kind": "virtual",
                "virtual": v.vid,
                "conjuncts": [e.name for e in v.conjuncts],
                "t": d,
            }
    for row in model.rule_rows:
        variables[f"m_{row.label}"] = {
            "kind": "hardening",
            "label": row.label,
            "idr_target": row.target.name,
        }
    return {
        "horizon": model.horizon,
        "budget": model.s,
        "attacked": sorted(e.name for e in model.attacked),
        "variables": variables,
    }
