"""Instance description files: parsing, validation, canonical export.

The format is UTF-8 sectioned text. Rationals are written exactly as p/q
(never floats), vectors as (p/q, p/q). A minimal file:

    [group]
    family = real

    [structure]
    kind = strict-order

    [space]
    points = 0; 1/4; 1
    metric = abs

    [map]
    image 0 = 0
    image 1/4 = 0
    image 1 = 0; 1/4

    [witness]
    class = alpha-const
    alpha = 1/2

Finite carriers use ``points`` or ``grid = lo .. hi step s``; sampled
continuum boxes use ``interval = lo .. hi``. Table metrics add one
``row = ...`` per point, in point order; the matrix must be symmetric with
a zero diagonal and every violation is reported with its cell and line.
Rule maps use ``rule = scale`` with ``factors = f1; f2; ...`` where each
factor (a scalar or a per-coordinate tuple) contributes one image point.

Parsing produces an InstanceDescription, a plain value: the canonical
export of a description reparses to an equal description, which is the
round-trip contract the command-line tool relies on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .order_core import coord_cone_module, real_module
from .topo import (
    PositiveSequence,
    SeqAtom,
    interior_cone_structure,
    strict_order_structure,
)
from .cone_metric import ConeMetricSpace
from .contraction import ContractionWitness, PsiProperties, SetValuedMap, WitnessClass
from .harness import InstanceBundle, _scalar_sequences, _vector_sequences


class InstanceFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# ---------------------------------------------------------------------------
# element syntax


def parse_scalar(text: str, line: int | None = None) -> Fraction:
    text = text.strip()
    # canonical exact form only: integers and p/q, never decimal points
    if any(ch in text for ch in ".eE"):
        raise InstanceFileError(f"rationals are written p/q, got {text!r}", line)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InstanceFileError(f"not an exact rational: {text!r}", line) from None


def parse_element(text: str, line: int | None = None):
    text = text.strip()
    if text.startswith("("):
        if not text.endswith(")"):
            raise InstanceFileError(f"unbalanced tuple: {text!r}", line)
        inner = text[1:-1]
        return tuple(parse_scalar(part, line) for part in inner.split(","))
    return parse_scalar(text, line)


def parse_element_list(text: str, line: int | None = None) -> tuple:
    parts = [p for p in text.split(";") if p.strip()]
    if not parts:
        raise InstanceFileError("empty element list", line)
    return tuple(parse_element(p, line) for p in parts)


def render_element(value) -> str:
    if isinstance(value, tuple):
        return "(" + ", ".join(render_element(v) for v in value) + ")"
    return str(value)


def render_element_list(values) -> str:
    return "; ".join(render_element(v) for v in values)


# ---------------------------------------------------------------------------
# description


@dataclass(frozen=True)
class InstanceDescription:
    family: str  # real | coord-cone
    dimension: int
    structure: str  # strict-order | interior-cone
    space_kind: str  # points | grid | interval
    metric: str  # abs | coordinatewise | table
    points: tuple | None = None
    grid: tuple | None = None  # (lo, hi, step)
    interval: tuple | None = None  # (lo, hi)
    metric_rows: tuple | None = None
    map_kind: str | None = None  # table | rule
    map_table: tuple | None = None  # ((point, (images...)), ...) in point order
    map_rule: str | None = None
    map_factors: tuple | None = None
    witness_class: str | None = None
    alpha: Fraction | None = None
    alpha_name: str | None = None
    alpha_bound: Fraction | None = None
    phi_entries: tuple | None = None  # (((x, y), value), ...)
    psi_name: str | None = None
    sequences: tuple | None = None  # (((kind, coefficient, ratio), ...), ...)
    name: str = field(default="instance", compare=False)


_SECTIONS = ("group", "structure", "space", "map", "witness", "sequences")


def parse_instance_text(text: str, name: str = "instance") -> InstanceDescription:
    sections: dict[str, list[tuple[int, str, str]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if current not in _SECTIONS:
                raise InstanceFileError(f"unknown section [{current}]", lineno)
            sections.setdefault(current, [])
            continue
        if current is None:
            raise InstanceFileError("content before any section header", lineno)
        if "=" not in line:
            raise InstanceFileError(f"expected key = value, got {line!r}", lineno)
        key, value = line.split("=", 1)
        sections[current].append((lineno, key.strip(), value.strip()))
    for required in ("group", "structure", "space"):
        if required not in sections:
            raise InstanceFileError(f"missing required section [{required}]")
    return _assemble(sections, name)


def _single(entries, key, required=False, section=""):
    hits = [(ln, v) for ln, k, v in entries if k == key]
    if len(hits) > 1:
        raise InstanceFileError(f"duplicate key {key!r} in [{section}]", hits[1][0])
    if not hits:
        if required:
            lineno = entries[0][0] if entries else None
            raise InstanceFileError(f"missing key {key!r} in [{section}]", lineno)
        return None, None
    return hits[0]


def _assemble(sections, name: str) -> InstanceDescription:
    ge = sections["group"]
    ln, family = _single(ge, "family", required=True, section="group")
    if family not in ("real", "coord-cone"):
        raise InstanceFileError(f"unknown group family {family!r}", ln)
    dim = 1
    ln_d, dim_text = _single(ge, "dimension", section="group")
    if dim_text is not None:
        try:
            dim = int(dim_text)
        except ValueError:
            raise InstanceFileError(f"dimension must be an integer, got {dim_text!r}", ln_d) from None
    if family == "real" and dim != 1:
        raise InstanceFileError("the real family is one-dimensional", ln_d)
    if family == "coord-cone" and dim < 2:
        raise InstanceFileError("coord-cone needs dimension at least 2", ln_d or ln)

    se = sections["structure"]
    ln, kind = _single(se, "kind", required=True, section="structure")
    if kind not in ("strict-order", "interior-cone"):
        raise InstanceFileError(f"unknown structure kind {kind!r}", ln)

    sp = sections["space"]
    ln_m, metric = _single(sp, "metric", required=True, section="space")
    space_kind, points, grid, interval = _parse_space_carrier(sp, dim)
    if metric not in ("abs", "coordinatewise", "table"):
        raise InstanceFileError(f"unknown metric {metric!r}", ln_m)
    if metric == "abs" and dim != 1:
        raise InstanceFileError("abs metric applies to the real family", ln_m)
    if metric == "coordinatewise" and dim < 2:
        raise InstanceFileError("coordinatewise metric needs a vector group", ln_m)
    metric_rows = None
    if metric == "table":
        if space_kind != "points":
            raise InstanceFileError("table metrics need an explicit point list", ln_m)
        metric_rows = _parse_metric_rows(sp, points, dim)

    map_kind = map_table = map_rule = map_factors = None
    if "map" in sections and sections["map"]:
        map_kind, map_table, map_rule, map_factors = _parse_map(
            sections["map"], space_kind, points, dim)

    witness_class = alpha = alpha_name = alpha_bound = phi_entries = psi_name = None
    if "witness" in sections and sections["witness"]:
        (witness_class, alpha, alpha_name, alpha_bound,
         phi_entries, psi_name) = _parse_witness(sections["witness"], points, dim)

    sequences = None
    if "sequences" in sections and sections["sequences"]:
        sequences = _parse_sequences(sections["sequences"], dim)

    return InstanceDescription(
        family=family, dimension=dim, structure=kind, space_kind=space_kind,
        metric=metric, points=points, grid=grid, interval=interval,
        metric_rows=metric_rows, map_kind=map_kind, map_table=map_table,
        map_rule=map_rule, map_factors=map_factors, witness_class=witness_class,
        alpha=alpha, alpha_name=alpha_name, alpha_bound=alpha_bound,
        phi_entries=phi_entries, psi_name=psi_name, sequences=sequences, name=name)


def _expect_dim(value, dim, lineno, what):
    actual = len(value) if isinstance(value, tuple) else 1
    if actual != dim:
        raise InstanceFileError(f"{what} has dimension {actual}, expected {dim}", lineno)
    return value


def _parse_space_carrier(entries, dim):
    choices = [(k, _single(entries, k, section="space"))
               for k in ("points", "grid", "interval")]
    present = [(k, ln, v) for k, (ln, v) in choices if v is not None]
    if len(present) != 1:
        raise InstanceFileError("space needs exactly one of points / grid / interval",
                                present[1][1] if len(present) > 1 else None)
    kind, ln, value = present[0]
    if kind == "points":
        pts = parse_element_list(value, ln)
        for p in pts:
            _expect_dim(p, dim, ln, "point")
        if len(set(pts)) != len(pts):
            raise InstanceFileError("duplicate point in list", ln)
        return "points", pts, None, None
    if kind == "grid":
        if "step" not in value:
            raise InstanceFileError("grid needs 'lo .. hi step s'", ln)
        span, step_text = value.rsplit("step", 1)
        if ".." not in span:
            raise InstanceFileError("grid needs 'lo .. hi step s'", ln)
        lo_t, hi_t = span.split("..", 1)
        lo = _expect_dim(parse_element(lo_t, ln), dim, ln, "grid corner")
        hi = _expect_dim(parse_element(hi_t, ln), dim, ln, "grid corner")
        step = parse_scalar(step_text, ln)
        if step <= 0:
            raise InstanceFileError("grid step must be positive", ln)
        pts = _expand_grid(lo, hi, step, ln)
        return "grid", pts, (lo, hi, step), None
    if ".." not in value:
        raise InstanceFileError("interval needs 'lo .. hi'", ln)
    lo_t, hi_t = value.split("..", 1)
    lo = _expect_dim(parse_element(lo_t, ln), dim, ln, "interval corner")
    hi = _expect_dim(parse_element(hi_t, ln), dim, ln, "interval corner")
    return "interval", None, None, (lo, hi)


def _expand_grid(lo, hi, step, ln) -> tuple:
    def axis(a, b):
        if b < a:
            raise InstanceFileError("grid corner order reversed", ln)
        count = (b - a) / step
        if count.denominator != 1:
            raise InstanceFileError("grid span is not a multiple of the step", ln)
        return [a + k * step for k in range(int(count) + 1)]

    if not isinstance(lo, tuple):
        pts = tuple(axis(lo, hi))
    else:
        axes = [axis(a, b) for a, b in zip(lo, hi)]
        pts = [()]
        for ax in axes:
            pts = [p + (c,) for p in pts for c in ax]
        pts = tuple(pts)
    if len(pts) > 10000:
        raise InstanceFileError("grid too large (over 10000 points)", ln)
    return pts


def _parse_metric_rows(entries, points, dim) -> tuple:
    rows = [(ln, v) for ln, k, v in entries if k == "row"]
    if len(rows) != len(points):
        raise InstanceFileError(
            f"table metric needs {len(points)} rows, found {len(rows)}",
            rows[0][0] if rows else None)
    zero = tuple(Fraction(0) for _ in range(dim)) if dim > 1 else Fraction(0)
    matrix = []
    for ln, v in rows:
        row = parse_element_list(v, ln)
        if len(row) != len(points):
            raise InstanceFileError(f"row has {len(row)} entries, expected {len(points)}", ln)
        for entry in row:
            _expect_dim(entry, dim, ln, "table entry")
        matrix.append((ln, row))
    for i, (ln_i, row_i) in enumerate(matrix):
        if row_i[i] != zero:
            raise InstanceFileError(
                f"table diagonal cell ({i}, {i}) must be {render_element(zero)}", ln_i)
        for j, (ln_j, row_j) in enumerate(matrix):
            if row_i[j] != row_j[i]:
                raise InstanceFileError(
                    f"table asymmetric at cell ({i}, {j}): {render_element(row_i[j])} "
                    f"vs {render_element(row_j[i])}", ln_j)
    return tuple(row for _, row in matrix)


_MAP_RULES = ("scale",)


def _parse_map(entries, space_kind, points, dim):
    images = [(ln, k[len("image"):].strip(), v) for ln, k, v in entries
              if k.startswith("image")]
    ln_rule, rule = _single(entries, "rule", section="map")
    if images and rule:
        raise InstanceFileError("map cannot mix an image table with a rule", ln_rule)
    if rule:
        if rule not in _MAP_RULES:
            raise InstanceFileError(f"unknown map rule {rule!r}", ln_rule)
        ln_f, factors_text = _single(entries, "factors", required=True, section="map")
        factors = parse_element_list(factors_text, ln_f)
        for f in factors:
            if isinstance(f, tuple) and len(f) != dim:
                raise InstanceFileError("tuple factor dimension mismatch", ln_f)
        return "rule", None, rule, factors
    if not images:
        raise InstanceFileError("map section needs image entries or a rule")
    if space_kind == "interval":
        raise InstanceFileError("image tables need a finite carrier", images[0][0])
    table = {}
    for ln, point_text, v in images:
        p = parse_element(point_text, ln)
        if p not in points:
            raise InstanceFileError(f"image key {render_element(p)} is not a declared point", ln)
        if p in table:
            raise InstanceFileError(f"duplicate image entry for {render_element(p)}", ln)
        img = parse_element_list(v, ln)
        for q in img:
            if q not in points:
                raise InstanceFileError(
                    f"image point {render_element(q)} is not a declared point", ln)
        table[p] = img
    missing = [p for p in points if p not in table]
    if missing:
        raise InstanceFileError(f"map table misses point {render_element(missing[0])}")
    ordered = tuple((p, table[p]) for p in points)
    return "table", ordered, None, None


_PSI_NAMES = ("half", "damped")
_ALPHA_FN_NAMES = ("capped-ratio",)
_SEQ_KINDS = ("constant", "harmonic", "inverse-square", "geometric")


def _parse_sequences(entries, dim) -> tuple:
    """Each line is ``seq = <kind> <coefficient> [ratio q]`` with atoms
    joined by ' + ' for finite sums, e.g. ``seq = harmonic 1 + constant 1/2``."""
    out = []
    for ln, key, value in entries:
        if key != "seq":
            raise InstanceFileError(f"unknown key {key!r} in [sequences]", ln)
        atoms = []
        for part in value.split(" + "):
            part = part.strip()
            ratio = None
            if " ratio " in part:
                part, ratio_text = part.rsplit(" ratio ", 1)
                ratio = parse_scalar(ratio_text, ln)
            tokens = part.split(None, 1)
            if len(tokens) != 2:
                raise InstanceFileError(
                    "sequence atoms look like: <kind> <coefficient>", ln)
            kind, coeff_text = tokens
            if kind not in _SEQ_KINDS:
                raise InstanceFileError(f"unknown sequence kind {kind!r}", ln)
            coeff = _expect_dim(parse_element(coeff_text, ln), dim, ln,
                                "sequence coefficient")
            if (kind == "geometric") != (ratio is not None):
                raise InstanceFileError(
                    "exactly the geometric kind takes a ratio", ln)
            if ratio is not None and not 0 <= ratio < 1:
                raise InstanceFileError("ratio must lie in [0, 1)", ln)
            atoms.append((kind, coeff, ratio))
        out.append(tuple(atoms))
    return tuple(out)


def _parse_witness(entries, points, dim):
    ln, klass = _single(entries, "class", required=True, section="witness")
    if klass == "alpha-const":
        ln_a, a_text = _single(entries, "alpha", required=True, section="witness")
        alpha = parse_scalar(a_text, ln_a)
        if not 0 <= alpha < 1:
            raise InstanceFileError("alpha must lie in [0, 1)", ln_a)
        return klass, alpha, None, None, None, None
    if klass == "alpha-fn":
        ln_n, fn_name = _single(entries, "name", required=True, section="witness")
        if fn_name not in _ALPHA_FN_NAMES:
            raise InstanceFileError(f"unknown ratio function {fn_name!r}", ln_n)
        ln_b, b_text = _single(entries, "bound", required=True, section="witness")
        bound = parse_scalar(b_text, ln_b)
        if not 0 < bound < 1:
            raise InstanceFileError("bound must lie in (0, 1)", ln_b)
        return klass, None, fn_name, bound, None, None
    if klass == "phi-table":
        if points is None:
            raise InstanceFileError("phi tables need a finite carrier", ln)
        rows = [(l, k[len("phi"):].strip(), v) for l, k, v in entries if k.startswith("phi")]
        if not rows:
            raise InstanceFileError("phi-table witness needs phi entries", ln)
        table = {}
        for l, key_text, v in rows:
            if "|" not in key_text:
                raise InstanceFileError("phi entries look like: phi x | y = value", l)
            x_t, y_t = key_text.split("|", 1)
            x, y = parse_element(x_t, l), parse_element(y_t, l)
            if x not in points or y not in points:
                raise InstanceFileError("phi entry names an undeclared point", l)
            table[(x, y)] = parse_element(v, l)
        for x in points:
            for y in points:
                if x != y and (x, y) not in table:
                    raise InstanceFileError(
                        f"phi table misses pair ({render_element(x)}, {render_element(y)})")
        ordered = tuple(((x, y), table[(x, y)]) for x in points for y in points if x != y)
        return klass, None, None, None, ordered, None
    if klass == "psi":
        if dim != 1:
            raise InstanceFileError("scalar-function witnesses need the real family", ln)
        ln_p, psi_name = _single(entries, "psi", required=True, section="witness")
        if psi_name not in _PSI_NAMES:
            raise InstanceFileError(f"unknown psi name {psi_name!r}", ln_p)
        return klass, None, None, None, None, psi_name
    raise InstanceFileError(f"unknown witness class {klass!r}", ln)


# ---------------------------------------------------------------------------
# canonical export


def export_instance_text(desc: InstanceDescription) -> str:
    lines = ["[group]", f"family = {desc.family}"]
    if desc.family == "coord-cone":
        lines.append(f"dimension = {desc.dimension}")
    lines += ["", "[structure]", f"kind = {desc.structure}", "", "[space]"]
    if desc.space_kind == "points":
        lines.append(f"points = {render_element_list(desc.points)}")
    elif desc.space_kind == "grid":
        lo, hi, step = desc.grid
        lines.append(f"grid = {render_element(lo)} .. {render_element(hi)} step {step}")
    else:
        lo, hi = desc.interval
        lines.append(f"interval = {render_element(lo)} .. {render_element(hi)}")
    lines.append(f"metric = {desc.metric}")
    if desc.metric_rows is not None:
        for row in desc.metric_rows:
            lines.append(f"row = {render_element_list(row)}")
    if desc.map_kind is not None:
        lines += ["", "[map]"]
        if desc.map_kind == "table":
            for p, img in desc.map_table:
                lines.append(f"image {render_element(p)} = {render_element_list(img)}")
        else:
            lines.append(f"rule = {desc.map_rule}")
            lines.append(f"factors = {render_element_list(desc.map_factors)}")
    if desc.witness_class is not None:
        lines += ["", "[witness]", f"class = {desc.witness_class}"]
        if desc.witness_class == "alpha-const":
            lines.append(f"alpha = {desc.alpha}")
        elif desc.witness_class == "alpha-fn":
            lines.append(f"name = {desc.alpha_name}")
            lines.append(f"bound = {desc.alpha_bound}")
        elif desc.witness_class == "phi-table":
            for (x, y), v in desc.phi_entries:
                lines.append(f"phi {render_element(x)} | {render_element(y)} = {render_element(v)}")
        elif desc.witness_class == "psi":
            lines.append(f"psi = {desc.psi_name}")
    if desc.sequences is not None:
        lines += ["", "[sequences]"]
        for atoms in desc.sequences:
            parts = []
            for kind, coeff, ratio in atoms:
                text = f"{kind} {render_element(coeff)}"
                if ratio is not None:
                    text += f" ratio {ratio}"
                parts.append(text)
            lines.append("seq = " + " + ".join(parts))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# bundle construction


def _distance_magnitude(d) -> Fraction:
    return max(d) if isinstance(d, tuple) else d


def _make_witness(desc: InstanceDescription, space: ConeMetricSpace) -> ContractionWitness | None:
    if desc.witness_class is None:
        return None
    if desc.witness_class == "alpha-const":
        return ContractionWitness(WitnessClass.ALPHA_CONSTANT, alpha_const=desc.alpha)
    if desc.witness_class == "alpha-fn":
        bound = desc.alpha_bound
        if desc.alpha_name != "capped-ratio":
            raise InstanceFileError(f"unknown ratio function {desc.alpha_name!r}")

        def alpha(x, y):
            s = _distance_magnitude(space.distance(x, y))
            return bound * s / (1 + s)

        return ContractionWitness(WitnessClass.ALPHA_FUNCTION, alpha_fn=alpha,
                                  alpha_bound=bound,
                                  label=f"capped-ratio (bound {bound})")
    if desc.witness_class == "phi-table":
        return ContractionWitness(WitnessClass.PHI_TABLE,
                                  phi_table=dict(desc.phi_entries))
    if desc.witness_class == "psi":
        if desc.psi_name == "half":
            psi = lambda t: t / 2  # noqa: E731
        else:  # damped
            psi = lambda t: t / (1 + t)  # noqa: E731
        return ContractionWitness(WitnessClass.PSI_ON_DISTANCE, psi=psi,
                                  psi_properties=PsiProperties(),
                                  label=f"psi {desc.psi_name}")
    raise InstanceFileError(f"unknown witness class {desc.witness_class!r}")


def build_bundle(desc: InstanceDescription) -> InstanceBundle:
    dim = desc.dimension
    module = real_module() if desc.family == "real" else coord_cone_module(dim)
    if desc.structure == "strict-order":
        structure = strict_order_structure(module)
    else:
        structure = interior_cone_structure(module)

    if desc.metric == "abs":
        metric = lambda x, y: abs(x - y)  # noqa: E731
    elif desc.metric == "coordinatewise":
        metric = lambda x, y: tuple(abs(a - b) for a, b in zip(x, y))  # noqa: E731
    else:
        index = {p: i for i, p in enumerate(desc.points)}
        rows = desc.metric_rows

        def metric(x, y, _index=index, _rows=rows):
            return _rows[_index[x]][_index[y]]

    if desc.space_kind == "interval":
        lo, hi = desc.interval
        if dim == 1:
            contains = lambda p: isinstance(p, Fraction) and lo <= p <= hi  # noqa: E731

            def sampler(rng, _lo=lo, _hi=hi):
                den = rng.randint(1, 16)
                return _lo + (_hi - _lo) * Fraction(rng.randint(0, den), den)
        else:
            contains = lambda p: (isinstance(p, tuple) and len(p) == dim  # noqa: E731
                                  and all(a <= c <= b for a, c, b in zip(lo, p, hi)))

            def sampler(rng, _lo=lo, _hi=hi):
                out = []
                for a, b in zip(_lo, _hi):
                    den = rng.randint(1, 16)
                    out.append(a + (b - a) * Fraction(rng.randint(0, den), den))
                return tuple(out)
        space = ConeMetricSpace(desc.name, structure, metric,
                                contains=contains, sampler=sampler)
        default_seed = hi
    else:
        space = ConeMetricSpace(desc.name, structure, metric, points=desc.points)
        default_seed = desc.points[-1]

    map_ = None
    if desc.map_kind == "table":
        map_ = SetValuedMap.from_table(space, dict(desc.map_table))
    elif desc.map_kind == "rule":
        factors = desc.map_factors

        def apply_factor(x, f):
            if isinstance(f, tuple):
                return tuple(c * fc for c, fc in zip(x, f))
            if isinstance(x, tuple):
                return tuple(c * f for c in x)
            return x * f

        map_ = SetValuedMap.from_rule(
            space, lambda x: tuple(apply_factor(x, f) for f in factors), name="scale")
        if space.finite:
            # rule images must stay inside a finite carrier
            for p in space.points:
                for q in map_.images(p):
                    if not space.member(q):
                        raise InstanceFileError(
                            f"rule image {render_element(q)} of point "
                            f"{render_element(p)} is not a declared point")

    witness = _make_witness(desc, space)

    if dim == 1:
        sequences = _scalar_sequences(module)
        eps_family = (Fraction(1, 2), Fraction(1, 10), Fraction(1, 100))
        solver_eps = Fraction(1, 1024)
    else:
        sequences = _vector_sequences(module, dim)
        half = tuple(Fraction(1, 2) for _ in range(dim))
        tenth = tuple(Fraction(1, 10) for _ in range(dim))
        eps_family = (half, tenth)
        solver_eps = tuple(Fraction(1, 1024) for _ in range(dim))
    if desc.sequences is not None:
        built = []
        for atoms in desc.sequences:
            seq_atoms = tuple(SeqAtom(kind, module.group.coerce(coeff), ratio)
                              for kind, coeff, ratio in atoms)
            label = " + ".join(
                f"{k} {render_element(c)}" + (f" ratio {r}" if r is not None else "")
                for k, c, r in atoms)
            try:
                built.append(PositiveSequence(module, label, atoms=seq_atoms))
            except ValueError as exc:
                raise InstanceFileError(f"sequence {label!r}: {exc}") from exc
        sequences = tuple(built)

    banach_map = None
    banach_alpha = None
    if desc.map_kind == "rule" and desc.map_factors and len(desc.map_factors) == 1:
        f = desc.map_factors[0]

        def banach_map(x, _f=f):
            if isinstance(_f, tuple):
                return tuple(c * fc for c, fc in zip(x, _f))
            if isinstance(x, tuple):
                return tuple(c * _f for c in x)
            return x * _f

        mags = f if isinstance(f, tuple) else (f,)
        banach_alpha = max(abs(v) for v in mags)

    return InstanceBundle(
        name=desc.name,
        module=module,
        structure=structure,
        space=space,
        map_=map_,
        witness=witness,
        sequences=sequences,
        eps_family=eps_family,
        alt_structure=strict_order_structure(module) if dim > 1 else None,
        solver_seed=default_seed,
        solver_eps=solver_eps,
        banach_map=banach_map,
        banach_alpha=banach_alpha,
    )


# ---------------------------------------------------------------------------
# built-in instance files


BUILTIN_INSTANCE_TEXTS = {
    "r1-banach": """\
[group]
family = real

[structure]
kind = strict-order

[space]
interval = 0 .. 1
metric = abs

[map]
rule = scale
factors = 1/2

[witness]
class = alpha-const
alpha = 1/2
""",
    "three-point": """\
[group]
family = real

[structure]
kind = strict-order

[space]
points = 0; 1/4; 1
metric = abs

[map]
image 0 = 0
image 1/4 = 0
image 1 = 0; 1/4

[witness]
class = alpha-const
alpha = 1/2
""",
    "cone2-shrink": """\
[group]
family = coord-cone
dimension = 2

[structure]
kind = interior-cone

[space]
interval = (0, 0) .. (1, 1)
metric = coordinatewise

[map]
rule = scale
factors = (1/2, 1/3)

[witness]
class = alpha-const
alpha = 1/2
""",
}


def load_instance(path_or_name: str) -> InstanceDescription:
    """Parse a file path, or fall back to a built-in instance name."""
    import os

    if os.path.exists(path_or_name):
        with open(path_or_name, "r", encoding="utf-8") as fh:
            text = fh.read()
        stem = os.path.splitext(os.path.basename(path_or_name))[0]
        return parse_instance_text(text, name=stem)
    if path_or_name in BUILTIN_INSTANCE_TEXTS:
        return parse_instance_text(BUILTIN_INSTANCE_TEXTS[path_or_name],
                                   name=path_or_name)
    raise InstanceFileError(
        f"no such file or built-in instance: {path_or_name!r} "
        f"(built-ins: {', '.join(sorted(BUILTIN_INSTANCE_TEXTS))})")
