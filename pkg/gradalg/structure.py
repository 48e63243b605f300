"""
Decision procedures and numerology for graded division algebras: triple
validation, structure reports, graded centers, form existence for BSZ data,
degree formulas and the per-group case tables.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from sympy import integer_nthroot

from .abelian import AbelianGroup, quotient
from .cohomology import (
    Bicharacter,
    cocycle_from_bicharacter,
    commutator_form,
    invariant_bicharacters,
    is_invariant,
    is_nondegenerate,
    q_invariant,
    radical,
)
from .errors import CenterNotGradedError, CocycleError, NotInvariantError, ValidationError
from .graded_algebra import BSZPresentation
from .groups import (
    Extension,
    FiniteGroup,
    Subgroup,
    beta_violation,
    center,
    conjugation_matrices,
    coset_index_map,
    extension_splits,
    normal_abelian_subgroups,
)

logger = logging.getLogger(__name__)

DASH = "—"


@dataclass(frozen=True)
class RealizableTriple:
    """([beta], phi, d) with phi invariant under the action of Q"""

    ext: Extension
    phi: Bicharacter
    d: int


def triple_conditions(ext: Extension, phi: Bicharacter, d: int) -> Dict[str, bool]:
    """Each condition of a realizable triple, evaluated independently"""
    beta_ok = beta_violation(ext.H, ext.Q, ext.action, ext.beta) is None
    kernel_ok = phi.H == ext.H
    return {
        'beta_valid': beta_ok,
        'phi_on_H': kernel_ok,
        'phi_invariant': kernel_ok and q_invariant(phi, ext),
        'd_positive': d >= 1,
    }


def validate_triple(ext: Extension, phi: Bicharacter, d: int) -> RealizableTriple:
    conditions = triple_conditions(ext, phi, d)
    failed = [name for name, ok in conditions.items() if not ok]
    if not failed:
        return RealizableTriple(ext, phi, d)
    message = f"triple rejected: {', '.join(failed)} failed"
    logger.warning(message)
    if 'beta_valid' in failed:
        violation = beta_violation(ext.H, ext.Q, ext.action, ext.beta)
        raise CocycleError(message, witness={'failed': failed, 'beta': violation})
    if 'phi_invariant' in failed and 'phi_on_H' not in failed:
        raise NotInvariantError(message, witness={'failed': failed})
    raise ValidationError(message, witness={'failed': failed})


def degree_formula(d: int, H_order: int, S_order: int, index_GH: int) -> int:
    """d * sqrt([H:S]) * [G:H]"""
    if S_order < 1 or H_order % S_order:
        raise ValidationError(f"|S| = {S_order} does not divide |H| = {H_order}")
    root, exact = integer_nthroot(H_order // S_order, 2)
    if not exact:
        raise ValidationError(f"[H:S] = {H_order // S_order} is not a perfect square; S is not a radical")
    return d * int(root) * index_GH


@dataclass
class StructureReport:
    H_elements: Tuple[str, ...]
    H_type: AbelianGroup
    phi: Bicharacter
    S_elements: Tuple[str, ...]
    S_type: AbelianGroup
    S_central: bool
    K_graded: bool
    K_in_De: bool
    K_equals_K0: bool
    L_over_K0_degree: int
    K_over_K0_degree: int
    D_degree: int
    H_mod_S_type: AbelianGroup
    extension_splits: bool
    d: int
    multiplicity: int = 1

    @property
    def phi_trivial(self) -> bool:
        return self.phi.is_trivial()

    def key(self) -> Tuple:
        """Fields that decide whether two rows are merged"""
        return (
            self.H_type.order, self.H_type.invariant_factors, self.phi.E, self.S_type.invariant_factors,
            self.S_central, self.K_graded, self.K_in_De, self.K_equals_K0, self.L_over_K0_degree,
            self.K_over_K0_degree, self.D_degree, self.H_mod_S_type.invariant_factors, self.extension_splits,
        )


def _check_normal_abelian(H: Subgroup):
    if not H.is_abelian():
        raise ValidationError(f"H = {{{', '.join(H.names())}}} is not abelian")
    if not H.is_normal():
        raise ValidationError(f"H = {{{', '.join(H.names())}}} is not normal")


def _radical_in_G(H: Subgroup, phi: Bicharacter) -> Tuple[AbelianGroup, List[int]]:
    rad = radical(phi)
    ident = H.identification
    return rad.group, sorted(ident.to_element(x) for x in rad.elements)


def structure_report(G: FiniteGroup, H: Subgroup, phi: Bicharacter, d: int) -> StructureReport:
    """Numerology of a division algebra realizing (G, H, phi, d)"""
    _check_normal_abelian(H)
    if phi.H != H.abelian_type:
        raise ValidationError(f"bicharacter lives on {phi.H}, H has type {H.abelian_type}")
    if not is_invariant(phi, conjugation_matrices(G, H)):
        raise NotInvariantError("phi is not invariant under conjugation by G")
    S_type, S = _radical_in_G(H, phi)
    Z = center(G)
    S_central = all(s in Z for s in S)
    nondegenerate = is_nondegenerate(phi)
    index = G.order // H.order
    ident = H.identification
    S_coords = [ident.to_coords(s) for s in S]
    return StructureReport(
        H_elements=tuple(H.names()),
        H_type=H.abelian_type,
        phi=phi,
        S_elements=tuple(G.name(s) for s in S),
        S_type=S_type,
        S_central=S_central,
        K_graded=S_central,
        K_in_De=nondegenerate,
        K_equals_K0=nondegenerate,
        L_over_K0_degree=index,
        K_over_K0_degree=len(S),
        D_degree=degree_formula(d, H.order, len(S), index),
        H_mod_S_type=quotient(H.abelian_type, S_coords),
        extension_splits=extension_splits(G, H),
        d=d,
    )


@dataclass(frozen=True)
class GradedCenter:
    """K = K_0^alpha S: the radical S and alpha restricted to S x S (positions in S_elements)"""

    S_elements: Tuple[int, ...]
    S_type: AbelianGroup
    n: int
    alpha: Tuple[Tuple[int, ...], ...]
    note: str = "alpha|S is determined up to a coboundary over L"

    @property
    def degree_over_K0(self) -> int:
        return len(self.S_elements)


def graded_center_presentation(G: FiniteGroup, H: Subgroup, phi: Bicharacter,
                               n: Optional[int] = None) -> GradedCenter:
    _check_normal_abelian(H)
    S_type, S = _radical_in_G(H, phi)
    Z = center(G)
    outside = [s for s in S if s not in Z]
    if outside:
        raise CenterNotGradedError(
            f"S is not central in G ({G.name(outside[0])} is not central), so the center is not graded",
            witness=G.name(outside[0]),
        )
    alpha = cocycle_from_bicharacter(phi, n)
    ident = H.identification
    coords = [ident.to_coords(s) for s in S]
    table = tuple(tuple(alpha.value(x, y) for y in coords) for x in coords)
    return GradedCenter(tuple(S), S_type, alpha.n, table)


@dataclass
class FormReport:
    conditions: Dict[str, bool]
    coset_counts: Dict[int, int] = field(default_factory=dict)

    @property
    def exists(self) -> bool:
        return all(self.conditions.values())


def form_exists(P: BSZPresentation) -> FormReport:
    """The four conditions for a G-graded division algebra form of the BSZ algebra"""
    G, H = P.G, P.H
    abelian = H.is_abelian()
    normal = H.is_normal()
    position = coset_index_map(G, H)
    counts = {c: 0 for c in set(position.values())}
    for g in P.g_tuple:
        counts[position[g]] += 1
    balanced = len(set(counts.values())) == 1 and min(counts.values()) > 0
    invariant = False
    if abelian and normal:
        phi = commutator_form(P.abstract_cocycle())
        invariant = is_invariant(phi, conjugation_matrices(G, H))
    report = FormReport(
        conditions={
            'H_abelian': abelian,
            'cosets_balanced': balanced,
            'H_normal': normal,
            'alpha_invariant': invariant,
        },
        coset_counts=counts,
    )
    logger.debug(f"Form existence conditions: {report.conditions}")
    return report


# Case tables


def _reports_for_subgroup(G: FiniteGroup, H: Subgroup, d: int) -> List[StructureReport]:
    phis = invariant_bicharacters(H.abelian_type, conjugation_matrices(G, H))
    return [structure_report(G, H, phi, d) for phi in phis]


def case_report(G: FiniteGroup, d: int, workers: int = 1) -> List[StructureReport]:
    """One row per (normal abelian H, invariant phi), merging rows whose reports coincide"""
    subgroups = normal_abelian_subgroups(G)
    logger.info(f"Building case report over {len(subgroups)} normal abelian subgroups, d={d}")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            per_subgroup = list(executor.map(lambda H: _reports_for_subgroup(G, H, d), subgroups))
    else:
        per_subgroup = [_reports_for_subgroup(G, H, d) for H in subgroups]
    merged: Dict[Tuple, StructureReport] = {}
    for reports in per_subgroup:
        for report in reports:
            key = report.key()
            if key in merged:
                merged[key].multiplicity += 1
            else:
                merged[key] = report
    rows = sorted(merged.values(), key=lambda r: (r.H_type.order, r.H_type.invariant_factors, r.phi.E))
    logger.info(f"Case report has {len(rows)} rows")
    return rows


def golden_fields(report: StructureReport) -> Dict[str, Any]:
    """The fields compared against golden tables; K_graded is a dash when H is trivial"""
    return {
        'H': str(report.H_type),
        'multiplicity': report.multiplicity,
        'phi_trivial': report.phi_trivial,
        'S': str(report.S_type),
        'K_graded': DASH if report.H_type.is_trivial() else report.K_graded,
        'K_equals_K0': report.K_equals_K0,
        'L_over_K0_degree': report.L_over_K0_degree,
        'K_over_K0_degree': report.K_over_K0_degree,
        'D_degree': report.D_degree,
        'extension_splits': report.extension_splits,
    }


def compare_golden(rows: List[StructureReport], golden: Dict[str, Any]) -> List[str]:
    """Mismatch descriptions; empty when every golden field agrees"""
    expected = golden.get('rows', [])
    problems = []
    if len(expected) != len(rows):
        problems.append(f"row count: expected {len(expected)}, got {len(rows)}")
    for number, (row, want) in enumerate(zip(rows, expected), start=1):
        got = golden_fields(row)
        for name, value in want.items():
            if got.get(name) != value:
                problems.append(f"row {number} field {name}: expected {value!r}, got {got.get(name)!r}")
    return problems


def _cell(value: Any) -> str:
    if value is True:
        return "yes"
    if value is False:
        return "no"
    return str(value)


MARKDOWN_COLUMNS = (
    ("H", "H"),
    ("count", "multiplicity"),
    ("φ", "phi_trivial"),
    ("S", "S"),
    ("K graded?", "K_graded"),
    ("[L:K₀]", "L_over_K0_degree"),
    ("[K:K₀]", "K_over_K0_degree"),
    ("deg D", "D_degree"),
    ("K ⊆ D_e?", "K_equals_K0"),
    ("split", "extension_splits"),
)


def render_markdown(rows: List[StructureReport], title: Optional[str] = None) -> str:
    lines = []
    if title:
        lines.extend([f"### {title}", ""])
    lines.append("| " + " | ".join(header for header, _ in MARKDOWN_COLUMNS) + " |")
    lines.append("|" + "|".join("---" for _ in MARKDOWN_COLUMNS) + "|")
    for row in rows:
        fields = golden_fields(row)
        cells = []
        for _, name in MARKDOWN_COLUMNS:
            if name == 'phi_trivial':
                cells.append("trivial" if fields[name] else "nontrivial")
            else:
                cells.append(_cell(fields[name]))
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"
