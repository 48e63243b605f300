"""
JSON codecs for gradalg objects and schema validation of CLI inputs
"""

import json
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Sequence, Union

from jsonschema import Draft7Validator

from .abelian import AbelianElement, AbelianGroup, IntMatrixHom
from .cohomology import Bicharacter, Cocycle2H
from .config import PACKAGE_ROOT
from .cyclotomic import CyclotomicNumber
from .errors import SchemaError, ValidationError
from .graded_algebra import BSZPresentation, GradedAlgebra
from .groups import (
    Extension,
    FiniteGroup,
    Subgroup,
    abelian_cayley,
    dihedral_extension,
    named_group,
    quaternion_extension,
)
from .realization import CrossedPresentation, MonomialCoefficient, Substitution, VerificationReport
from .structure import FormReport, GradedCenter, StructureReport

logger = logging.getLogger(__name__)

SCHEMA_DIR = PACKAGE_ROOT / 'schemas'


def dumps(obj: Any) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, trailing newline"""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, default=str) + "\n"


# Schemas


@lru_cache(maxsize=None)
def load_schema(name: str) -> Dict[str, Any]:
    path = SCHEMA_DIR / f"{name}.json"
    if not path.exists():
        raise SchemaError(f"unknown schema '{name}'")
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


def _json_path(parts: Sequence[Union[str, int]]) -> str:
    path = "$"
    for part in parts:
        path += f"[{part}]" if isinstance(part, int) else f".{part}"
    return path


def validate(obj: Any, schema_name: str) -> Any:
    """Check obj against a packaged schema; the first error (by path) becomes a SchemaError"""
    validator = Draft7Validator(load_schema(schema_name))
    errors = sorted(validator.iter_errors(obj), key=lambda e: [str(p) for p in e.absolute_path])
    if errors:
        error = errors[0]
        path = _json_path(list(error.absolute_path))
        logger.debug(f"Schema {schema_name} rejected input at {path}: {error.message}")
        raise SchemaError(error.message, path)
    return obj


# Abelian groups


def abelian_group_to_json(H: AbelianGroup) -> Dict[str, Any]:
    return {'invariant_factors': list(H.invariant_factors)}


def abelian_group_from_json(obj: Dict[str, Any]) -> AbelianGroup:
    return AbelianGroup.from_cyclic_factors(obj['invariant_factors'])


def element_to_json(x: AbelianElement) -> Dict[str, Any]:
    return {'coords': list(x.coords)}


def element_from_json(H: AbelianGroup, obj: Union[Dict[str, Any], List[int]], path: str = "$") -> AbelianElement:
    coords = obj['coords'] if isinstance(obj, dict) else obj
    if len(coords) != H.rank:
        raise SchemaError(f"element {coords} does not have {H.rank} coordinates for H = {H}", path)
    return H.element(coords)


def hom_to_json(f: IntMatrixHom) -> Dict[str, Any]:
    return {'matrix': [list(row) for row in f.matrix]}


def hom_from_json(source: AbelianGroup, target: AbelianGroup, obj: Union[Dict[str, Any], List],
                  path: str = "$") -> IntMatrixHom:
    matrix = obj['matrix'] if isinstance(obj, dict) else obj
    if len(matrix) != target.rank or any(len(row) != source.rank for row in matrix):
        raise SchemaError(f"matrix must be {target.rank}x{source.rank} for {source} -> {target}", path)
    return IntMatrixHom(source, target, tuple(tuple(row) for row in matrix))


# Finite groups and extensions


def group_to_json(G: FiniteGroup) -> Dict[str, Any]:
    obj: Dict[str, Any] = {'cayley': [list(row) for row in G.cayley]}
    if G.names is not None:
        obj['names'] = list(G.names)
    return obj


def group_from_json(spec: Union[str, Dict[str, Any]], path: str = "$") -> FiniteGroup:
    """A built-in name, an abelian type or an explicit Cayley table"""
    if isinstance(spec, str):
        try:
            return named_group(spec)
        except ValidationError as e:
            raise SchemaError(str(e), path)
    if 'invariant_factors' in spec:
        return abelian_cayley(abelian_group_from_json(spec))
    return FiniteGroup(tuple(tuple(row) for row in spec['cayley']), spec.get('names'))


def element_of(G: FiniteGroup, ref: Union[int, str], path: str = "$") -> int:
    """Group element by index or by name"""
    if isinstance(ref, int):
        if not 0 <= ref < G.order:
            raise SchemaError(f"element {ref} is not in a group of order {G.order}", path)
        return ref
    names = [G.name(g) for g in range(G.order)]
    if ref not in names:
        raise SchemaError(f"unknown element name '{ref}'", path)
    return names.index(ref)


_BUILTIN_EXTENSIONS = {
    'Q8': quaternion_extension,
    'D4': dihedral_extension,
}


def extension_to_json(ext: Extension) -> Dict[str, Any]:
    return {
        'H': abelian_group_to_json(ext.H),
        'Q': group_to_json(ext.Q),
        'action': [[list(row) for row in f.matrix] for f in ext.action],
        'beta': [[list(b.coords) for b in row] for row in ext.beta],
    }


def extension_from_json(spec: Union[str, Dict[str, Any]], path: str = "$") -> Extension:
    if isinstance(spec, str):
        key = spec.strip().upper()
        if key not in _BUILTIN_EXTENSIONS:
            raise SchemaError(f"unknown built-in extension '{spec}'", path)
        return _BUILTIN_EXTENSIONS[key]()
    H = abelian_group_from_json(spec['H'])
    Q = group_from_json(spec['Q'], f"{path}.Q")
    if 'action' in spec:
        if len(spec['action']) != Q.order:
            raise SchemaError(f"action must list one matrix per element of Q ({Q.order})", f"{path}.action")
        action = tuple(hom_from_json(H, H, m, f"{path}.action[{q}]") for q, m in enumerate(spec['action']))
    else:
        action = (IntMatrixHom.identity(H),) * Q.order
    if 'beta' in spec:
        if len(spec['beta']) != Q.order or any(len(row) != Q.order for row in spec['beta']):
            raise SchemaError(f"beta must be a {Q.order}x{Q.order} table", f"{path}.beta")
        beta = tuple(
            tuple(element_from_json(H, b, f"{path}.beta[{i}][{j}]") for j, b in enumerate(row))
            for i, row in enumerate(spec['beta'])
        )
    else:
        beta = tuple((H.zero(),) * Q.order for _ in range(Q.order))
    return Extension(H, Q, action, beta)


# Bicharacters and cocycles


def bicharacter_to_json(phi: Bicharacter) -> Dict[str, Any]:
    return {'E': [list(row) for row in phi.E]}


def bicharacter_from_json(H: AbelianGroup, obj: Dict[str, Any], path: str = "$") -> Bicharacter:
    E = obj['E']
    if len(E) != H.rank or any(len(row) != H.rank for row in E):
        raise SchemaError(f"E must be a {H.rank}x{H.rank} matrix for H = {H}", f"{path}.E")
    return Bicharacter(H, tuple(tuple(row) for row in E))


def cocycle_to_json(alpha: Cocycle2H) -> Dict[str, Any]:
    return {'n': alpha.n, 'table': [list(row) for row in alpha.table]}


def cocycle_from_json(H: AbelianGroup, obj: Dict[str, Any], path: str = "$") -> Cocycle2H:
    table = obj['table']
    if len(table) != H.order or any(len(row) != H.order for row in table):
        raise SchemaError(f"table must be {H.order}x{H.order} for H = {H}", f"{path}.table")
    return Cocycle2H(H, int(obj['n']), tuple(tuple(row) for row in obj['table']))


# Cyclotomic numbers and algebras


def cyclotomic_to_json(x: CyclotomicNumber) -> Dict[str, Any]:
    return {'n': x.n, 'coeffs': [[str(c.numerator), str(c.denominator)] for c in x.coeffs]}


def cyclotomic_from_json(obj: Dict[str, Any]) -> CyclotomicNumber:
    return CyclotomicNumber(int(obj['n']), tuple(Fraction(int(p), int(q)) for p, q in obj['coeffs']))


def algebra_to_json(A: GradedAlgebra) -> Dict[str, Any]:
    products = []
    for (i, j) in sorted(A.products):
        vector = A.products[(i, j)]
        products.append([i, j, [[k, cyclotomic_to_json(vector[k])] for k in sorted(vector)]])
    obj = {
        'n': A.n,
        'group': group_to_json(A.G),
        'grading': list(A.grading),
        'products': products,
        'identity': [[k, cyclotomic_to_json(v)] for k, v in sorted(A.identity.items())],
    }
    if A.labels is not None:
        obj['labels'] = list(A.labels)
    return obj


def algebra_from_json(obj: Dict[str, Any], check: bool = True) -> GradedAlgebra:
    products = {
        (int(i), int(j)): {int(k): cyclotomic_from_json(c) for k, c in entries}
        for i, j, entries in obj['products']
    }
    identity = {int(k): cyclotomic_from_json(c) for k, c in obj['identity']}
    labels = tuple(obj['labels']) if 'labels' in obj else None
    return GradedAlgebra(group_from_json(obj['group']), int(obj['n']), tuple(obj['grading']),
                         products, identity, labels, check)


def bsz_to_json(P: BSZPresentation) -> Dict[str, Any]:
    return {
        'G': group_to_json(P.G),
        'H_elements': list(P.H.elements),
        'alpha': {'n': P.n, 'table': [list(row) for row in P.alpha]},
        'tuple': list(P.g_tuple),
    }


def bsz_from_json(obj: Dict[str, Any]) -> BSZPresentation:
    G = group_from_json(obj['G'], "$.G")
    listed = [element_of(G, x, f"$.H_elements[{k}]") for k, x in enumerate(obj['H_elements'])]
    H = Subgroup(G, tuple(sorted(listed)))
    g_tuple = tuple(element_of(G, g, f"$.tuple[{k}]") for k, g in enumerate(obj['tuple']))
    alpha = obj['alpha']
    if 'E' in alpha:
        phi = bicharacter_from_json(H.abelian_type, alpha, "$.alpha")
        return BSZPresentation.from_bicharacter(G, H, phi, g_tuple, alpha.get('n'))
    size = len(listed)
    if len(alpha['table']) != size or any(len(row) != size for row in alpha['table']):
        raise SchemaError(f"table must be {size}x{size}, one row per listed element of H", "$.alpha.table")
    # table rows follow the listed order of H_elements; re-index to sorted positions
    order = [listed.index(h) for h in H.elements]
    table = tuple(tuple(alpha['table'][p][q] for q in order) for p in order)
    return BSZPresentation(G, H, int(alpha['n']), table, g_tuple)


# Reports


def structure_report_to_json(report: StructureReport) -> Dict[str, Any]:
    return {
        'H': abelian_group_to_json(report.H_type),
        'H_elements': list(report.H_elements),
        'phi': bicharacter_to_json(report.phi),
        'phi_trivial': report.phi_trivial,
        'S': abelian_group_to_json(report.S_type),
        'S_elements': list(report.S_elements),
        'S_central': report.S_central,
        'K_graded': report.K_graded,
        'K_in_De': report.K_in_De,
        'K_equals_K0': report.K_equals_K0,
        'L_over_K0_degree': report.L_over_K0_degree,
        'K_over_K0_degree': report.K_over_K0_degree,
        'D_degree': report.D_degree,
        'H_mod_S': abelian_group_to_json(report.H_mod_S_type),
        'extension_splits': report.extension_splits,
        'd': report.d,
        'multiplicity': report.multiplicity,
    }


def case_report_to_json(group: str, d: int, rows: List[StructureReport]) -> Dict[str, Any]:
    return {'group': group, 'd': d, 'rows': [structure_report_to_json(r) for r in rows]}


def graded_center_to_json(K: GradedCenter) -> Dict[str, Any]:
    return {
        'S_elements': list(K.S_elements),
        'S': abelian_group_to_json(K.S_type),
        'alpha': {'n': K.n, 'table': [list(row) for row in K.alpha]},
        'degree_over_K0': K.degree_over_K0,
        'note': K.note,
    }


def form_report_to_json(report: FormReport) -> Dict[str, Any]:
    return {
        'exists': report.exists,
        'conditions': dict(report.conditions),
        'coset_counts': [report.coset_counts[c] for c in sorted(report.coset_counts)],
    }


# Crossed presentations


def monomial_to_json(c: MonomialCoefficient, N: int) -> Dict[str, Any]:
    return {
        'root': c.root_exponent(N),
        'laurent': [[i, e] for i, e in enumerate(c.laurent) if e],
    }


def _sparse_vector(pairs: Sequence[Sequence[int]], size: int, path: str) -> List[int]:
    vector = [0] * size
    for k, (var, exp) in enumerate(pairs):
        if not 0 <= var < size:
            raise SchemaError(f"variable index {var} out of range for {size} variables", f"{path}[{k}]")
        vector[var] += exp
    return vector


def monomial_from_json(obj: Dict[str, Any], N: int, size: int, path: str = "$") -> MonomialCoefficient:
    laurent = _sparse_vector(obj.get('laurent', []), size, f"{path}.laurent")
    return MonomialCoefficient(Fraction(obj.get('root', 0), N), tuple(laurent))


def substitution_to_json(sub: Substitution) -> List[List[List[int]]]:
    return [[[j, e] for j, e in image] for image in sub]


def substitution_from_json(obj: List, size: int, path: str = "$") -> Substitution:
    if len(obj) != size:
        raise SchemaError(f"a substitution must give an image for each of the {size} variables", path)
    images = []
    for v, pairs in enumerate(obj):
        vector = _sparse_vector(pairs, size, f"{path}[{v}]")
        images.append(tuple((j, e) for j, e in enumerate(vector) if e))
    return tuple(images)


def presentation_to_json(P: CrossedPresentation) -> Dict[str, Any]:
    return {
        'group': group_to_json(P.G),
        'grading_group': group_to_json(P.grading_group),
        'degree': list(P.degree),
        'd': P.d,
        'N': P.N,
        'variables': list(P.variables),
        'y_variables': list(P.y_variables),
        'gamma': [[monomial_to_json(c, P.N) for c in row] for row in P.gamma],
        'action': [substitution_to_json(sub) for sub in P.action],
        'h_elements': list(P.h_elements),
        'h_commutators': [[int(x * P.N) for x in row] for row in P.h_commutators],
    }


def presentation_from_json(obj: Dict[str, Any]) -> CrossedPresentation:
    G = group_from_json(obj['group'], "$.group")
    S = group_from_json(obj['grading_group'], "$.grading_group")
    N = int(obj['N'])
    size = len(obj['variables'])
    if len(obj['gamma']) != G.order or any(len(row) != G.order for row in obj['gamma']):
        raise SchemaError(f"gamma must be a {G.order}x{G.order} table", "$.gamma")
    if len(obj['action']) != G.order:
        raise SchemaError(f"action must list one substitution per symbol ({G.order})", "$.action")
    if len(obj['degree']) != G.order:
        raise SchemaError(f"degree must list one grading element per symbol ({G.order})", "$.degree")
    for k, g in enumerate(obj['degree']):
        element_of(S, g, f"$.degree[{k}]")
    for key in ('y_variables', 'h_elements'):
        bound = size if key == 'y_variables' else G.order
        for k, v in enumerate(obj[key]):
            if v >= bound:
                raise SchemaError(f"index {v} out of range", f"$.{key}[{k}]")
    h_count = len(obj['h_elements'])
    if len(obj['h_commutators']) != h_count or any(len(row) != h_count for row in obj['h_commutators']):
        raise SchemaError(f"h_commutators must be a {h_count}x{h_count} table", "$.h_commutators")
    return CrossedPresentation(
        G=G,
        grading_group=S,
        degree=tuple(obj['degree']),
        d=int(obj['d']),
        N=N,
        variables=tuple(obj['variables']),
        y_variables=tuple(obj['y_variables']),
        gamma=tuple(
            tuple(monomial_from_json(c, N, size, f"$.gamma[{i}][{j}]") for j, c in enumerate(row))
            for i, row in enumerate(obj['gamma'])
        ),
        action=tuple(substitution_from_json(sub, size, f"$.action[{g}]") for g, sub in enumerate(obj['action'])),
        h_elements=tuple(obj['h_elements']),
        h_commutators=tuple(tuple(Fraction(x, N) % 1 for x in row) for row in obj['h_commutators']),
    )


def verification_to_json(report: VerificationReport, P: CrossedPresentation) -> Dict[str, Any]:
    return {
        'ok': report.ok,
        'checks': dict(report.checks),
        'witnesses': dict(report.witnesses),
        'kernel': [P.G.name(g) for g in report.kernel],
        'e_rank': report.e_rank,
    }
