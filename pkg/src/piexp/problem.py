"""JSON problem files: algebra, named structures, polynomials and Lie ideal chains."""
from __future__ import annotations

import copy
import hashlib
import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .algebra import ASSOCIATIVE, LIE, Algebra, radical, validate_algebra
from .codimension import DecoratedMonomial, MultilinearPolynomial
from .errors import ValidationError
from .fields import cyclotomic_field
from .linalg import Matrix
from .structures import (ANTI, AUTO, TRIVIAL, DerivationAction, GroupAction, Grading, close_group,
                         operator_envelope, validate_structure)
from .subspace import Subspace

SCHEMA_VERSION = "piexp-problem/1"
DATA_DIR = Path(__file__).with_name("data")

_PARITY = {"automorphism": AUTO, "auto": AUTO, "anti-automorphism": ANTI, "anti": ANTI}


def _err(msg: str, loc: str):
    return ValidationError(f"{loc}: {msg}", location=loc)


@dataclass
class ProblemFile:
    name: str
    field: object
    algebra: Algebra
    structures: dict = dc_field(default_factory=dict)
    polynomials: dict = dc_field(default_factory=dict)  # name -> (MultilinearPolynomial, structure name)
    chains: dict = dc_field(default_factory=dict)  # name -> list of (I, J)
    source: dict = dc_field(default_factory=dict)

    def structure(self, name: str | None):
        if name is None or name in ("trivial", "none"):
            return TRIVIAL
        if name not in self.structures:
            known = ", ".join(sorted(self.structures)) or "none"
            raise ValidationError(f"unknown structure {name!r} (known: {known})")
        return self.structures[name]

    def polynomial(self, name: str):
        if name not in self.polynomials:
            known = ", ".join(sorted(self.polynomials)) or "none"
            raise ValidationError(f"unknown polynomial {name!r} (known: {known})")
        return self.polynomials[name]

    def to_json(self) -> dict:
        return dump_problem(self)

    def digest(self) -> str:
        text = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()


# --------------------------------------------------------------------------
# parsing helpers


def _scalar(F, x, loc):
    if isinstance(x, bool):
        raise _err(f"expected a scalar, got {x!r}", loc)
    if isinstance(x, int):
        return F(x)
    if isinstance(x, str):
        try:
            return F.parse(x)
        except (ValueError, ZeroDivisionError) as e:
            raise _err(f"cannot parse scalar {x!r} ({e})", loc) from None
    raise _err(f"expected a scalar string, got {x!r}", loc)


def _vector(F, v, d, loc):
    if not isinstance(v, list) or len(v) != d:
        raise _err(f"expected a vector of length {d}", loc)
    return tuple(_scalar(F, x, f"{loc}[{i}]") for i, x in enumerate(v))


def _matrix(F, m, d, loc) -> Matrix:
    if not isinstance(m, list) or len(m) != d:
        raise _err(f"expected a {d} x {d} matrix", loc)
    return Matrix(tuple(_vector(F, r, d, f"{loc}[{i}]") for i, r in enumerate(m)), d, F)


def _subspace(A: Algebra, spec, loc) -> Subspace:
    F, d = A.field, A.dim
    if isinstance(spec, str):
        if spec == "full":
            return A.full()
        if spec == "zero":
            return A.zero()
        if spec == "radical":
            return radical(A).radical
        raise _err(f"unknown subspace keyword {spec!r}", loc)
    if isinstance(spec, dict):
        if "indices" in spec:
            idx = spec["indices"]
            if not all(isinstance(i, int) and 0 <= i < d for i in idx):
                raise _err("basis indices out of range", loc + ".indices")
            return Subspace.span_of_basis_vectors(d, list(idx), F)
        if "names" in spec:
            names = [A.name(i) for i in range(d)]
            try:
                idx = [names.index(n) for n in spec["names"]]
            except ValueError:
                raise _err(f"unknown basis name in {spec['names']}", loc + ".names") from None
            return Subspace.span_of_basis_vectors(d, idx, F)
        if "vectors" in spec:
            spec = spec["vectors"]
        else:
            raise _err("subspace needs 'indices', 'names' or 'vectors'", loc)
    if not isinstance(spec, list):
        raise _err("expected a list of vectors", loc)
    return Subspace.from_vectors(d, [_vector(F, v, d, f"{loc}[{i}]") for i, v in enumerate(spec)], F)


def _parse_algebra(F, data, loc="algebra") -> Algebra:
    if not isinstance(data, dict):
        raise _err("expected an object", loc)
    kind = data.get("kind", ASSOCIATIVE)
    if kind not in (ASSOCIATIVE, LIE):
        raise _err(f"kind must be {ASSOCIATIVE!r} or {LIE!r}", loc + ".kind")
    d = data.get("dim")
    table = data.get("table")
    if not isinstance(d, int) or d < 1:
        raise _err("dim must be a positive integer", loc + ".dim")
    if not isinstance(table, list) or len(table) != d:
        raise _err(f"table must have {d} rows", loc + ".table")
    tab = []
    for i, row in enumerate(table):
        if not isinstance(row, list) or len(row) != d:
            raise _err(f"row must have {d} entries", f"{loc}.table[{i}]")
        tab.append(tuple(_vector(F, v, d, f"{loc}.table[{i}][{j}]") for j, v in enumerate(row)))
    names = data.get("basis_names")
    if names is not None and (len(names) != d or len(set(names)) != d):
        raise _err("basis_names must be distinct and one per basis element", loc + ".basis_names")
    A = Algebra(tuple(tab), kind, F, tuple(names) if names else tuple(f"b{i + 1}" for i in range(d)))
    rep = validate_algebra(A)
    if not rep.ok:
        raise ValidationError(f"{loc}.table: {rep.message}", witness=rep.witness, location=loc + ".table")
    return A


def _parse_structure(A: Algebra, data, loc):
    F, d = A.field, A.dim
    typ = data.get("type")
    name = data.get("name")
    if typ == "grading":
        moduli = tuple(data.get("moduli", ()))
        comps = {}
        for i, c in enumerate(data.get("components", [])):
            cl = f"{loc}.components[{i}]"
            label = c.get("label")
            if isinstance(label, int):
                label = [label]
            if not isinstance(label, list) or len(label) != len(moduli):
                raise _err(f"label must have {len(moduli)} entries", cl + ".label")
            g = tuple(x % m if m else x for x, m in zip(label, moduli))
            if g in comps:
                raise _err(f"label {g} listed twice", cl + ".label")
            comps[g] = _subspace(A, c.get("basis", c), cl)
        s = Grading(moduli, comps, name)
    elif typ == "group_action":
        gens = []
        for i, g in enumerate(data.get("generators", [])):
            gl = f"{loc}.generators[{i}]"
            parity = _PARITY.get(g.get("parity", "automorphism"))
            if parity is None:
                raise _err(f"unknown parity {g.get('parity')!r}", gl + ".parity")
            gens.append((_matrix(F, g.get("matrix"), d, gl + ".matrix"), parity))
        if not gens:
            raise _err("a group action needs generators", loc + ".generators")
        gnames = [g.get("name", f"g{i + 1}") for i, g in enumerate(data["generators"])]
        s = close_group(gens, name=name, generator_names=gnames)
    elif typ == "derivation_action":
        mats, gnames = [], []
        for i, g in enumerate(data.get("generators", [])):
            gl = f"{loc}.generators[{i}]"
            mats.append(_matrix(F, g.get("matrix"), d, gl + ".matrix"))
            gnames.append(g.get("name", f"D{i + 1}"))
        if not mats:
            raise _err("a derivation action needs generators", loc + ".generators")
        s = DerivationAction(tuple(mats), name, tuple(gnames))
    else:
        raise _err(f"unknown structure type {typ!r}", loc + ".type")
    rep = validate_structure(A, s)
    if not rep.ok:
        raise ValidationError(f"{loc}: {rep.message}", witness=rep.witness, location=loc)
    return s


def _generator_table(s) -> dict:
    if isinstance(s, GroupAction):
        names = s.generator_names or tuple(f"g{i + 1}" for i in range(len(s.generators)))
        return {n: m for n, (m, _) in zip(names, s.generators)}
    if isinstance(s, DerivationAction):
        names = s.generator_names or tuple(f"D{i + 1}" for i in range(len(s.generators)))
        return {n: m for n, m in zip(names, s.generators)}
    return {}


def _decoration(A: Algebra, s, dec, loc):
    """Label tuple (graded), Matrix (named operator or product), int (envelope index) or None."""
    if isinstance(s, Grading):
        if isinstance(dec, int):
            dec = [dec]
        if isinstance(dec, str):
            dec = [int(x) for x in dec.strip("()").split(",") if x.strip()]
        if not isinstance(dec, list) or len(dec) != len(s.moduli):
            raise _err(f"expected a grading label of length {len(s.moduli)}", loc)
        return s.normalize(tuple(dec))
    if dec is None:
        return None
    if isinstance(dec, int) and not isinstance(dec, bool):
        if not 0 <= dec < operator_envelope(A, s).dim:
            raise _err(f"envelope index {dec} out of range", loc)
        return dec
    if not isinstance(dec, str):
        raise _err(f"bad decoration {dec!r}", loc)
    table = _generator_table(s)
    out = Matrix.identity(A.dim, A.field)
    for factor in dec.replace(" ", "").split("*"):
        if factor in ("1", "id"):
            continue
        if factor not in table:
            raise _err(f"unknown operator {factor!r} (known: {', '.join(table) or 'none'})", loc)
        out = out @ table[factor]
    return out


def _parse_polynomial(A: Algebra, structures, data, loc):
    sname = data.get("structure")
    if sname is not None and sname not in structures:
        raise _err(f"unknown structure {sname!r}", loc + ".structure")
    s = structures.get(sname) if sname else None
    terms_in = data.get("terms")
    if not isinstance(terms_in, list) or not terms_in:
        raise _err("a polynomial needs a nonempty list of terms", loc + ".terms")
    n = data.get("n") or len(terms_in[0].get("vars", []))
    terms = []
    for i, t in enumerate(terms_in):
        tl = f"{loc}.terms[{i}]"
        coeff = _scalar(A.field, t.get("coeff", "1"), tl + ".coeff")
        vars_ = t.get("vars")
        if not isinstance(vars_, list) or sorted(vars_) != list(range(1, n + 1)):
            raise _err(f"vars must be a permutation of 1..{n}", tl + ".vars")
        decor = t.get("decor")
        if decor is None:
            decs = () if not isinstance(s, Grading) else None
            if decs is None:
                raise _err("graded polynomials need a label per variable", tl + ".decor")
        else:
            if len(decor) != n:
                raise _err(f"decor must have {n} entries", tl + ".decor")
            decs = tuple(_decoration(A, s, x, f"{tl}.decor[{j}]") for j, x in enumerate(decor))
            if all(x is None for x in decs):
                decs = ()
        terms.append((coeff, DecoratedMonomial(tuple(v - 1 for v in vars_), decs)))
    return MultilinearPolynomial(n, tuple(terms)), sname


# --------------------------------------------------------------------------
# public API


def parse_problem(data: dict, name: str = "problem") -> ProblemFile:
    if not isinstance(data, dict):
        raise _err("a problem file must be a JSON object", "$")
    fdata = data.get("field", {"conductor": 1})
    m = fdata.get("conductor", 1) if isinstance(fdata, dict) else fdata
    if not isinstance(m, int) or m < 1:
        raise _err("conductor must be a positive integer", "field.conductor")
    F = cyclotomic_field(m)
    A = _parse_algebra(F, data.get("algebra"))
    structures = {}
    for i, sd in enumerate(data.get("structures", [])):
        loc = f"structures[{i}]"
        if not isinstance(sd, dict) or not sd.get("name"):
            raise _err("each structure needs a name", loc)
        if sd["name"] in structures:
            raise _err(f"duplicate structure name {sd['name']!r}", loc + ".name")
        structures[sd["name"]] = _parse_structure(A, sd, loc)
    polys = {}
    for i, pd in enumerate(data.get("polynomials", [])):
        loc = f"polynomials[{i}]"
        if not isinstance(pd, dict) or not pd.get("name"):
            raise _err("each polynomial needs a name", loc)
        polys[pd["name"]] = _parse_polynomial(A, structures, pd, loc)
    chains = {}
    for i, cd in enumerate(data.get("chains", [])):
        loc = f"chains[{i}]"
        pairs = []
        for j, pair in enumerate(cd.get("pairs", [])):
            pl = f"{loc}.pairs[{j}]"
            pairs.append((_subspace(A, pair.get("I"), pl + ".I"), _subspace(A, pair.get("J"), pl + ".J")))
        chains[cd.get("name", f"chain{i + 1}")] = pairs
    return ProblemFile(data.get("name", name), F, A, structures, polys, chains, copy.deepcopy(data))


def load_problem(path) -> ProblemFile:
    """Read and validate a problem file; errors carry the JSON path or line/column."""
    p = Path(path)
    if not p.exists():
        for cand in (DATA_DIR / p.name, DATA_DIR / (p.name + ".json")):
            if cand.exists():
                p = cand
                break
    try:
        text = p.read_text()
    except OSError as e:
        raise ValidationError(f"cannot read {path}: {e.strerror}", location=str(path)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"{p.name}: line {e.lineno} column {e.colno}: {e.msg}",
                              location=f"line {e.lineno}") from None
    return parse_problem(data, p.stem)


def _vec_json(F, v) -> list:
    return [F.format(x) for x in v]


def _mat_json(F, m: Matrix) -> list:
    return [[F.format(x) for x in r] for r in m.rows]


def dump_problem(pf: ProblemFile) -> dict:
    """Canonical JSON of a parsed problem; reloading it gives identical objects."""
    A, F = pf.algebra, pf.field
    out = {
        "schema": SCHEMA_VERSION,
        "name": pf.name,
        "field": {"conductor": F.conductor},
        "algebra": {"kind": A.kind, "dim": A.dim, "basis_names": list(A.basis_names),
                    "table": A.to_json_table()},
        "structures": [],
    }
    for name, s in pf.structures.items():
        if isinstance(s, Grading):
            comps = [{"label": list(g), "basis": [_vec_json(F, v) for v in V.basis]}
                     for g, V in s.components.items()]
            out["structures"].append({"name": name, "type": "grading", "moduli": list(s.moduli),
                                      "components": comps})
        elif isinstance(s, GroupAction):
            names = s.generator_names
            gens = [{"name": names[i] if i < len(names) else f"g{i + 1}", "matrix": _mat_json(F, m),
                     "parity": "automorphism" if p == AUTO else "anti-automorphism"}
                    for i, (m, p) in enumerate(s.generators)]
            out["structures"].append({"name": name, "type": "group_action", "generators": gens})
        else:
            gens = [{"name": n, "matrix": _mat_json(F, m)} for n, m in zip(_generator_table(s), s.generators)]
            out["structures"].append({"name": name, "type": "derivation_action", "generators": gens})
    # polynomials and chains keep their source form (names resolve identically on reload)
    if pf.source.get("polynomials"):
        out["polynomials"] = copy.deepcopy(pf.source["polynomials"])
    if pf.chains:
        out["chains"] = [{"name": cname, "pairs": [{"I": [_vec_json(F, v) for v in I.basis],
                                                    "J": [_vec_json(F, v) for v in J.basis]}
                                                   for I, J in pairs]}
                         for cname, pairs in pf.chains.items()]
    return out


def to_text(obj, indent: int = 0) -> str:
    """JSON text with flat lists (vectors, matrix rows) kept on one line."""
    pad = " " * indent
    if isinstance(obj, dict) and obj:
        items = [f'{pad} {json.dumps(k)}: {to_text(v, indent + 1).lstrip()}' for k, v in obj.items()]
        return pad + "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list) and obj and any(isinstance(x, (list, dict)) for x in obj):
        items = [to_text(v, indent + 1) for v in obj]
        return pad + "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return pad + json.dumps(obj)


def save_problem(pf: ProblemFile, path) -> None:
    Path(path).write_text(to_text(dump_problem(pf)) + "\n")


def problem_from_objects(name: str, A: Algebra, structures: dict | None = None,
                         polynomials: list | None = None) -> ProblemFile:
    """Build a problem from in-memory objects (used to generate the bundled data)."""
    pf = ProblemFile(name, A.field, A, dict(structures or {}), {}, {}, {})
    data = dump_problem(pf)
    if polynomials:
        data["polynomials"] = polynomials
    return parse_problem(data, name)


def bundled(name: str) -> ProblemFile:
    fname = name if name.endswith(".json") else name + ".json"
    return load_problem(DATA_DIR / fname)


def bundled_names() -> list[str]:
    return sorted(p.stem for p in DATA_DIR.glob("*.json") if p.stem != "problem.schema")
