"""JSON document schemas for groups, representations, points, and configs.

Rationals cross the wire as decimal-free strings like "-3/2" (integers as
"7"), which round-trip bit-exactly.  Parsing raises SchemaError with the
offending path; emitting is the exact inverse of parsing.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .errors import DestabError, SchemaError
from .gcr import LieSubalgebra, SubgroupPresentation
from .groups import Cocharacter, GroupSpec
from .instability import SearchConfig, SubvarietyKind, SubvarietySpec
from .linalg import Mat
from .reps import ConjugationTuples, DirectSum, Point, Polynomial, Representation, SymPower


def _fail(path: str, message: str):
    raise SchemaError(f"{path}: {message}")


def parse_rational(value, path: str = "$") -> Fraction:
    if isinstance(value, bool):
        _fail(path, "booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if any(ch in value for ch in ".eE"):
            _fail(path, f"rationals are decimal-free 'p/q' strings, got {value!r}")
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            _fail(path, f"not an exact rational: {value!r}")
    _fail(path, f"expected an integer or 'p/q' string, got {type(value).__name__}")


def emit_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_matrix(value, path: str = "$") -> Mat:
    if not isinstance(value, list) or not value:
        _fail(path, "expected a nonempty list of rows")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list):
            _fail(f"{path}[{i}]", "expected a list")
        rows.append(tuple(parse_rational(x, f"{path}[{i}][{j}]") for j, x in enumerate(row)))
    if any(len(r) != len(rows[0]) for r in rows):
        _fail(path, "ragged matrix")
    return tuple(rows)


def emit_matrix(m: Mat) -> list[list[str]]:
    return [[emit_rational(x) for x in row] for row in m]


def parse_group(doc, path: str = "$") -> GroupSpec:
    if not isinstance(doc, dict):
        _fail(path, "expected an object")
    factors = doc.get("factors")
    if not isinstance(factors, list) or not factors:
        _fail(f"{path}.factors", "expected a nonempty list")
    parsed = []
    for i, f in enumerate(factors):
        if not isinstance(f, dict):
            _fail(f"{path}.factors[{i}]", "expected an object")
        family = f.get("family")
        rank = f.get("rank")
        if family not in ("GL", "SL"):
            _fail(f"{path}.factors[{i}].family", "must be 'GL' or 'SL'")
        if not isinstance(rank, int) or rank < 1:
            _fail(f"{path}.factors[{i}].rank", "must be a positive integer")
        parsed.append((family, rank))
    gram = doc.get("gram", "identity")
    try:
        if gram == "identity":
            return GroupSpec.make(*parsed)
        return GroupSpec.make(*parsed, gram=parse_matrix(gram, f"{path}.gram"))
    except DestabError as exc:
        if isinstance(exc, SchemaError):
            raise
        _fail(path, str(exc))


def emit_group(group: GroupSpec) -> dict:
    doc = {"factors": [{"family": f.family, "rank": f.rank} for f in group.factors]}
    if group.norm.gram == linalg.identity(group.dimension):
        doc["gram"] = "identity"
    else:
        doc["gram"] = emit_matrix(group.norm.gram)
    return doc


def parse_representation(doc, group: GroupSpec, path: str = "$") -> Representation:
    if not isinstance(doc, dict):
        _fail(path, "expected an object")
    kind = doc.get("kind")
    try:
        if kind == "conjugation_tuples":
            count = doc.get("count")
            if not isinstance(count, int) or count < 1:
                _fail(f"{path}.count", "must be a positive integer")
            m = doc.get("m", group.dimension)
            if m != group.dimension:
                _fail(f"{path}.m", "must match the group's matrix dimension")
            return ConjugationTuples(group, count)
        if kind == "adjoint":
            return ConjugationTuples(group, 1)
        if kind == "sym_power":
            degree = doc.get("degree")
            if not isinstance(degree, int) or degree < 1:
                _fail(f"{path}.degree", "must be a positive integer")
            return SymPower(group, degree)
        if kind == "direct_sum":
            parts = doc.get("parts")
            if not isinstance(parts, list) or not parts:
                _fail(f"{path}.parts", "expected a nonempty list")
            return DirectSum(
                tuple(
                    parse_representation(p, group, f"{path}.parts[{i}]")
                    for i, p in enumerate(parts)
                )
            )
    except DestabError as exc:
        if isinstance(exc, SchemaError):
            raise
        _fail(path, str(exc))
    _fail(f"{path}.kind", f"unknown representation kind {kind!r}")


def emit_representation(rep: Representation) -> dict:
    if isinstance(rep, ConjugationTuples):
        return {"kind": "conjugation_tuples", "m": rep.m, "count": rep.count}
    if isinstance(rep, SymPower):
        return {"kind": "sym_power", "degree": rep.degree}
    if isinstance(rep, DirectSum):
        return {"kind": "direct_sum", "parts": [emit_representation(p) for p in rep.parts]}
    raise SchemaError(f"cannot serialize representation {type(rep).__name__}")


def parse_point(doc, rep: Representation, path: str = "$") -> Point:
    if isinstance(doc, dict) and "matrices" in doc:
        if not isinstance(rep, ConjugationTuples):
            _fail(path, "matrix form requires a conjugation-tuple representation")
        mats = doc["matrices"]
        if not isinstance(mats, list):
            _fail(f"{path}.matrices", "expected a list")
        try:
            return rep.point([parse_matrix(h, f"{path}.matrices[{k}]") for k, h in enumerate(mats)])
        except DestabError as exc:
            if isinstance(exc, SchemaError):
                raise
            _fail(path, str(exc))
    if not isinstance(doc, list):
        _fail(path, "expected a coordinate array or {'matrices': ...}")
    coords = tuple(parse_rational(x, f"{path}[{i}]") for i, x in enumerate(doc))
    try:
        return Point(rep, coords)
    except DestabError as exc:
        _fail(path, str(exc))


def emit_point(point: Point) -> list[str]:
    return [emit_rational(c) for c in point.coords]


def parse_cocharacter(doc, group: GroupSpec, path: str = "$") -> Cocharacter:
    if not isinstance(doc, dict):
        _fail(path, "expected an object")
    exps = doc.get("exponents")
    if not isinstance(exps, list) or not all(isinstance(x, int) for x in exps):
        _fail(f"{path}.exponents", "expected a list of integers")
    base = doc.get("base")
    try:
        if base is None:
            return Cocharacter.standard(group, tuple(exps))
        return Cocharacter.based(group, parse_matrix(base, f"{path}.base"), tuple(exps))
    except DestabError as exc:
        if isinstance(exc, SchemaError):
            raise
        _fail(path, str(exc))


def emit_cocharacter(lam: Cocharacter) -> dict:
    doc = {"exponents": list(lam.torus.exponents)}
    if lam.base != lam.group.identity():
        doc["base"] = emit_matrix(lam.base)
    return doc


def parse_polynomial(doc, rep: Representation, path: str = "$") -> Polynomial:
    if not isinstance(doc, list):
        _fail(path, "expected a list of monomial terms")
    terms = {}
    for i, term in enumerate(doc):
        if not isinstance(term, dict):
            _fail(f"{path}[{i}]", "expected an object")
        coeff = parse_rational(term.get("coeff", "1"), f"{path}[{i}].coeff")
        mono = term.get("monomial", [])
        if not isinstance(mono, list):
            _fail(f"{path}[{i}].monomial", "expected a list of [index, exponent] pairs")
        pairs = []
        for j, pair in enumerate(mono):
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(x, int) for x in pair)
            ):
                _fail(f"{path}[{i}].monomial[{j}]", "expected [index, exponent]")
            pairs.append((pair[0], pair[1]))
        key = tuple(sorted(pairs))
        terms[key] = terms.get(key, Fraction(0)) + coeff
    try:
        return Polynomial.from_dict(rep, terms)
    except DestabError as exc:
        _fail(path, str(exc))


def emit_polynomial(poly: Polynomial) -> list[dict]:
    return [
        {"coeff": emit_rational(c), "monomial": [[i, e] for i, e in mono]}
        for mono, c in poly.terms
    ]


def parse_subvariety(doc, rep: Representation | None = None, path: str = "$") -> SubvarietySpec:
    if not isinstance(doc, dict):
        _fail(path, "expected an object")
    kind = doc.get("kind")
    if kind == "zero_locus":
        return SubvarietySpec.zero_locus()
    if kind == "identity_tuple":
        return SubvarietySpec.identity_tuple()
    if kind == "custom":
        if rep is None:
            _fail(path, "custom subvarieties need the representation context")
        gens = doc.get("generators")
        if not isinstance(gens, list) or not gens:
            _fail(f"{path}.generators", "expected a nonempty list")
        polys = tuple(
            parse_polynomial(g, rep, f"{path}.generators[{i}]") for i, g in enumerate(gens)
        )
        asserted = doc.get("g_stable_asserted", False)
        if not isinstance(asserted, bool):
            _fail(f"{path}.g_stable_asserted", "expected a boolean")
        return SubvarietySpec.custom(polys, asserted)
    _fail(f"{path}.kind", f"unknown subvariety kind {kind!r}")


def emit_subvariety(s: SubvarietySpec) -> dict:
    if s.kind is SubvarietyKind.CUSTOM:
        return {
            "kind": "custom",
            "generators": [emit_polynomial(g) for g in s.custom_generators],
            "g_stable_asserted": s.g_stable_asserted,
        }
    return {"kind": s.kind.value}


def parse_config(doc, group: GroupSpec, path: str = "$") -> SearchConfig:
    if doc is None:
        return SearchConfig.default(group)
    if not isinstance(doc, dict):
        _fail(path, "expected an object")
    box = doc.get("exponent_box", 4)
    if not isinstance(box, int) or box < 1:
        _fail(f"{path}.exponent_box", "must be a positive integer")
    oracle = doc.get("oracle_mode", False)
    if not isinstance(oracle, bool):
        _fail(f"{path}.oracle_mode", "expected a boolean")
    samples = doc.get("normalizer_samples", [])
    if not isinstance(samples, list):
        _fail(f"{path}.normalizer_samples", "expected a list of matrices")
    parsed_samples = tuple(
        parse_matrix(g, f"{path}.normalizer_samples[{i}]") for i, g in enumerate(samples)
    )
    family = doc.get("family", "weyl")
    try:
        if family == "weyl" or family is None:
            shear_values = tuple(doc.get("shear_values", ()))
            if not all(isinstance(v, int) for v in shear_values):
                _fail(f"{path}.shear_values", "expected integers")
            return SearchConfig.default(
                group,
                exponent_box=box,
                shear_values=shear_values,
                oracle_mode=oracle,
                normalizer_samples=parsed_samples,
            )
        if not isinstance(family, list):
            _fail(f"{path}.family", "expected 'weyl' or a list of matrices")
        frames = tuple(parse_matrix(g, f"{path}.family[{i}]") for i, g in enumerate(family))
        return SearchConfig(group, box, frames, oracle, parsed_samples)
    except DestabError as exc:
        if isinstance(exc, SchemaError):
            raise
        _fail(path, str(exc))


def emit_config(cfg: SearchConfig) -> dict:
    return {
        "exponent_box": cfg.exponent_box,
        "family": [emit_matrix(g) for g in cfg.conjugation_family],
        "oracle_mode": cfg.oracle_mode,
        "normalizer_samples": [emit_matrix(g) for g in cfg.normalizer_samples],
    }


def parse_subgroup(doc, group: GroupSpec, path: str = "$") -> SubgroupPresentation:
    if not isinstance(doc, dict):
        _fail(path, "expected an object")
    gens = doc.get("generators")
    if not isinstance(gens, list) or not gens:
        _fail(f"{path}.generators", "expected a nonempty list of matrices")
    mats = [parse_matrix(g, f"{path}.generators[{i}]") for i, g in enumerate(gens)]
    try:
        return SubgroupPresentation(group, tuple(mats))
    except DestabError as exc:
        _fail(path, str(exc))


def emit_subgroup(h: SubgroupPresentation) -> dict:
    return {"generators": [emit_matrix(g) for g in h.generators]}


def parse_lie_subalgebra(doc, group: GroupSpec, path: str = "$") -> LieSubalgebra:
    if not isinstance(doc, dict):
        _fail(path, "expected an object")
    basis = doc.get("basis")
    if not isinstance(basis, list) or not basis:
        _fail(f"{path}.basis", "expected a nonempty list of matrices")
    mats = [parse_matrix(x, f"{path}.basis[{i}]") for i, x in enumerate(basis)]
    try:
        return LieSubalgebra(group, tuple(mats))
    except DestabError as exc:
        _fail(path, str(exc))
