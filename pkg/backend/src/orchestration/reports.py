"""
Report Rendering Module

Serializable report models for every command plus their text and DOT
renderings. Literals are written "x3" / "!x3" in JSON and "x3" / "x̄3" in
text.
"""
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from ..analysis.design import STATUS_ALREADY_UNIQUE, DesignReport
from ..analysis.uniqueness import Certificate
from ..datamodel import Component, MinSetReport, canonical


class MinSetsOutput(BaseModel):
    """JSON form of a MinSetReport."""

    model_config = ConfigDict(frozen=True)

    q: int
    n: int
    unsigned: List[List[str]]
    signed: List[List[str]]
    signed_consistent: bool
    extended_components: List[List[str]] = []

    @classmethod
    def from_report(cls, report: MinSetReport, q: int, n: int) -> "MinSetsOutput":
        return cls(
            q=q,
            n=n,
            unsigned=[c.tokens() for c in report.unsigned_minsets],
            signed=[c.tokens() for c in report.signed_minsets],
            signed_consistent=report.signed_consistent,
            extended_components=[c.tokens() for c in report.extended_components],
        )

    def to_report(self) -> MinSetReport:
        def components(groups: Sequence[Sequence[str]]) -> Tuple[Component, ...]:
            return tuple(canonical(Component.from_tokens(g) for g in groups))

        return MinSetReport(
            unsigned_minsets=components(self.unsigned),
            signed_minsets=components(self.signed),
            signed_consistent=self.signed_consistent,
            extended_components=components(self.extended_components),
        )


def _family(components: Sequence[Component]) -> str:
    return ", ".join(str(c) for c in components) or "(none)"


def render_minsets_text(report: MinSetReport) -> str:
    lines = [
        f"Extended components: {_family(report.extended_components)}",
        f"Unsigned min-sets:   {_family(report.unsigned_minsets)}",
    ]
    if report.signed_consistent:
        lines.append(f"Signed min-sets:     {_family(report.signed_minsets)}")
        lines.append(f"✅ {len(report.signed_minsets)} signed min-set(s); a unate function fits the data")
    else:
        lines.append("Signed min-sets:     (none)")
        lines.append("❌ No unate function fits the data; there are no signed min-sets")
    return "\n".join(lines)


def _dot_graph(name: str, component: Component, signed: bool) -> str:
    edges = []
    for lit in component.literals:
        if signed:
            label = "−" if lit.polarity else "+"
            edges.append(f'  "x{lit.var}" -> "f" [label="{label}"];')
        else:
            edges.append(f'  "x{lit.var}" -> "f";')
    body = "\n".join(['  "f";'] + edges)
    return f"digraph {name} {{\n{body}\n}}"


def render_minsets_dot(report: MinSetReport) -> str:
    """One digraph per min-set, every literal wired into the target node "f"."""
    graphs = [_dot_graph(f"unsigned_{i}", c, False) for i, c in enumerate(report.unsigned_minsets, start=1)]
    graphs += [_dot_graph(f"signed_{i}", c, True) for i, c in enumerate(report.signed_minsets, start=1)]
    return "\n\n".join(graphs)


def render_certificate_text(certificate: Certificate) -> str:
    lines = [f"Input set: {len(certificate.points)} point(s) in {{0..{certificate.q - 1}}}^{certificate.n}"]
    if certificate.cylindrically_connected:
        lines.append("✅ Cylindrically connected")
    else:
        witness = certificate.connectivity_witness
        fixed = ", ".join(f"s{i}={u}" for i, u in sorted(witness.cylinder.items())) or "whole grid"
        lines.append(f"❌ Not cylindrically connected: {{{fixed}}} separates {witness.points[0]} and {witness.points[1]}")
    diagonal = certificate.diagonal
    if diagonal is None:
        lines.append("Diagonal: undefined (fewer than two points)")
    elif diagonal.witness is None:
        lines.append(f"Diagonal: none (nearest-neighbour distance {diagonal.length})")
    else:
        corner = "corner point" if diagonal.corner_point else "not a corner point"
        lines.append(f"Diagonal: length {diagonal.length} at {diagonal.witness} ({corner})")
    evidence = ""
    if certificate.type_monomial:
        evidence = f" (monomial {''.join(certificate.type_monomial)})"
    elif certificate.type_weak_order is not None:
        evidence = f" (weak order {certificate.type_weak_order})"
    lines.append(f"Type: {certificate.type_class}{evidence}")
    lines.append(f"Unique unsigned min-set for every output assignment: {certificate.unsigned_unique_for_all_outputs}")
    lines.append(f"At most one signed min-set for every output assignment: {certificate.signed_at_most_one_for_all_outputs}")
    return "\n".join(lines)


def render_design_text(report: DesignReport) -> str:
    if report.status == STATUS_ALREADY_UNIQUE:
        lines = ["✅ V is already cylindrically connected; no experiments needed"]
    elif report.suggestions:
        lines = [f"✅ {len(report.suggestions)} way(s) to extend V with at most {report.k} experiment(s):"]
        for rank, suggestion in enumerate(report.suggestions, start=1):
            points = ", ".join("".join(str(c) for c in p) for p in suggestion.added_points)
            lines.append(f"  {rank}. add {points} (diagonal length afterwards: {suggestion.diagonal_length})")
    else:
        lines = [f"❌ No extension with at most {report.k} experiment(s) makes V cylindrically connected"]
    if report.note:
        lines.append(f"Note: {report.note}")
    return "\n".join(lines)


class OracleCheck(BaseModel):
    """Algebraic versus brute-force min-sets for one kind."""

    kind: str
    status: str
    strategy: str
    model_count: Optional[int] = None
    algebraic: List[List[str]]
    oracle: List[List[str]]
    only_algebraic: List[List[str]] = []
    only_oracle: List[List[str]] = []
    consistent_algebraic: Optional[bool] = None
    consistent_oracle: Optional[bool] = None


class OracleComparison(BaseModel):
    q: int
    n: int
    m: int
    checks: List[OracleCheck]
    model_space: Dict[str, int]

    @property
    def passed(self) -> bool:
        return all(c.status == "PASS" for c in self.checks)


def render_oracle_text(comparison: OracleComparison) -> str:
    space = comparison.model_space
    if "exponent" in space:
        size = f"{space['base']}^{space['exponent']}"
    else:
        size = str(space["count"])
    lines = [f"|Mod(D)| = {size}"]
    for check in comparison.checks:
        mark = "✅" if check.status == "PASS" else "❌"
        count = f", {check.model_count} fitting model(s)" if check.model_count is not None else ""
        lines.append(f"{mark} {check.kind}: {check.status} ({check.strategy} strategy{count})")
        if check.status != "PASS":
            lines.append(f"   only algebraic: {check.only_algebraic}")
            lines.append(f"   only oracle:    {check.only_oracle}")
    return "\n".join(lines)
