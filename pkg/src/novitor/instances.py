"""JSON schemas for instance files, and access to the bundled instances.

Complexes::

    {"ring": "Z[t]", "degrees": [{"basis": ["p1"]}, ...],
     "boundaries": [{"deg": 1, "matrix": [["1-t"]]}]}

(matrix rows are labeled by the degree-1 basis of the lower degree, columns
by the degree's own basis; entries use the coefficient text syntax).

Instances::

    {"name": ..., "dim": m,
     "points": [{"label": "p", "index": 1}],
     "incidence": [{"from": "p", "to": "q", "coeff": "1-t"}],
     "N_data": 16,
     "simplicial": {complex}, "orbits": {...}, "descent": {...},
     "homology": [[[1]], ...], "comparison": [{"deg": 0, "matrix": [["1"]]}]}

Orbit sets: {"N_orb": 16, "orbits": [{"n": 1, "m": 1, "eps": 1}, ...]};
primes: {"primes": [{"n": 1, "e1": -1, "e2": -1}]};
homology: {"h": [[[1]], [[2,1],[1,1]], [[1]]]};
descent: {"R": {complex}, "Nv": {complex},
          "H": [{"deg": 0, "matrix": [["t"]]}],
          "sigma1": [{"gen": "p", "vector": ["t"]}],
          "stars": {"s1": [...], "s2": [...]}}.

Every loader error carries the JSON path of the offending field.
"""
from __future__ import annotations

import json
from importlib import resources

from .complexes import BasedChainComplex
from .descent import DescentSystem
from .errors import InputError, NovitorError
from .matrices import Matrix
from .morse import CriticalPoint, MNInstance, NovikovIncidence
from .parsing import parse_rational
from .rings import ZT, ring_from_tag
from .series import DEFAULT_ORDER
from .zeta import ClosedOrbit, OrbitSet, PrimeOrbit


def _want(obj, key, kind, path, default=None, required=False):
    if key not in obj:
        if required:
            raise InputError(path, f"missing required field '{key}'")
        return default
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise InputError(f"{path}.{key}", f"expected {kind.__name__ if not isinstance(kind, tuple) else 'one of ' + '/'.join(k.__name__ for k in kind)}, got {type(value).__name__}")
    return value


def _poly_entry(raw, path):
    value = parse_rational(raw, path)
    try:
        return ZT.coerce(value)
    except NovitorError as exc:
        raise InputError(path, str(exc)) from exc


def load_complex(obj, path="complex") -> BasedChainComplex:
    if not isinstance(obj, dict):
        raise InputError(path, "complex must be an object")
    ring_tag = _want(obj, "ring", str, path, default="Z[t]")
    try:
        ring = ring_from_tag(ring_tag)
    except NovitorError as exc:
        raise InputError(f"{path}.ring", str(exc)) from exc
    degrees = _want(obj, "degrees", list, path, default=[])
    bases = []
    for k, entry in enumerate(degrees):
        basis = _want(entry, "basis", list, f"{path}.degrees[{k}]", default=[])
        bases.append(tuple(str(x) for x in basis))
    if not bases:
        bases = [()]
    boundaries = {}
    for i, entry in enumerate(_want(obj, "boundaries", list, path, default=[])):
        bpath = f"{path}.boundaries[{i}]"
        deg = _want(entry, "deg", int, bpath, required=True)
        raw = _want(entry, "matrix", list, bpath, required=True)
        if deg < 1 or deg >= len(bases):
            raise InputError(bpath, f"boundary degree {deg} outside 1..{len(bases) - 1}")
        rows = len(bases[deg - 1])
        cols = len(bases[deg])
        if len(raw) != rows or any(len(r) != cols for r in raw):
            raise InputError(
                f"{bpath}.matrix", f"expected a {rows}x{cols} matrix for degree {deg}"
            )
        data = []
        for r in range(rows):
            row = []
            for c in range(cols):
                epath = f"{bpath}.matrix[{r}][{c}]"
                value = parse_rational(raw[r][c], epath)
                try:
                    row.append(ring.coerce(value))
                except NovitorError as exc:
                    raise InputError(epath, str(exc)) from exc
            data.append(row)
        boundaries[deg] = Matrix(data, ncols=cols)
    try:
        return BasedChainComplex(ring, bases, boundaries)
    except NovitorError as exc:
        raise InputError(path, str(exc)) from exc


def load_orbits(obj, path="orbits") -> OrbitSet:
    n_orb = _want(obj, "N_orb", int, path, required=True)
    orbits = []
    for i, entry in enumerate(_want(obj, "orbits", list, path, default=[])):
        opath = f"{path}.orbits[{i}]"
        try:
            orbits.append(
                ClosedOrbit(
                    _want(entry, "n", int, opath, required=True),
                    _want(entry, "m", int, opath, required=True),
                    _want(entry, "eps", int, opath, required=True),
                )
            )
        except NovitorError as exc:
            raise InputError(opath, str(exc)) from exc
    try:
        return OrbitSet(tuple(orbits), n_orb)
    except NovitorError as exc:
        raise InputError(path, str(exc)) from exc


def load_primes(obj, path="primes"):
    out = []
    for i, entry in enumerate(_want(obj, "primes", list, path, required=True)):
        ppath = f"{path}.primes[{i}]"
        try:
            out.append(
                PrimeOrbit(
                    _want(entry, "n", int, ppath, required=True),
                    _want(entry, "e1", int, ppath, required=True),
                    _want(entry, "e2", int, ppath, required=True),
                )
            )
        except NovitorError as exc:
            raise InputError(ppath, str(exc)) from exc
    return out


def load_homology(obj, path="homology"):
    hs = _want(obj, "h", list, path, required=True)
    out = []
    for i, m in enumerate(hs):
        if m is None or m == []:
            out.append(None)
            continue
        if not isinstance(m, list) or not all(isinstance(row, list) for row in m):
            raise InputError(f"{path}.h[{i}]", "expected a matrix (list of rows)")
        try:
            out.append(Matrix([[int(x) for x in row] for row in m]))
        except (TypeError, ValueError) as exc:
            raise InputError(f"{path}.h[{i}]", f"integer matrix required: {exc}") from exc
    return out


def _load_deg_matrices(entries, path):
    out = {}
    for i, entry in enumerate(entries or []):
        mpath = f"{path}[{i}]"
        deg = _want(entry, "deg", int, mpath, required=True)
        raw = _want(entry, "matrix", list, mpath, required=True)
        data = [
            [_poly_entry(x, f"{mpath}.matrix[{r}][{c}]") for c, x in enumerate(row)]
            for r, row in enumerate(raw)
        ]
        ncols = len(data[0]) if data else 0
        out[deg] = Matrix(data, ncols=ncols)
    return out


def load_descent(obj, path="descent", n_data=DEFAULT_ORDER) -> DescentSystem:
    r = load_complex(_want(obj, "R", dict, path, default={"degrees": []}), f"{path}.R")
    nv = load_complex(_want(obj, "Nv", dict, path, default={"degrees": []}), f"{path}.Nv")
    h = _load_deg_matrices(_want(obj, "H", list, path, default=[]), f"{path}.H")
    sigma_entries = _want(obj, "sigma1", list, path, default=[])
    nv_pos = {}
    for k in nv.degrees():
        for j, label in enumerate(nv.basis(k)):
            nv_pos[label] = (k, j)
    sigma = {}
    for i, entry in enumerate(sigma_entries):
        spath = f"{path}.sigma1[{i}]"
        gen = _want(entry, "gen", str, spath, required=True)
        vec = _want(entry, "vector", list, spath, required=True)
        if gen not in nv_pos:
            raise InputError(spath, f"unknown Novikov generator {gen!r}")
        k, j = nv_pos[gen]
        rows = r.rank(k - 1)
        if len(vec) != rows:
            raise InputError(
                f"{spath}.vector", f"expected {rows} entries (rank of R in degree {k - 1})"
            )
        if k not in sigma:
            sigma[k] = [[ZT.zero() for _ in range(nv.rank(k))] for _ in range(rows)]
        for rix in range(rows):
            sigma[k][rix][j] = _poly_entry(vec[rix], f"{spath}.vector[{rix}]")
    sigma = {k: Matrix(rows_, ncols=nv.rank(k)) for k, rows_ in sigma.items()}
    stars = _want(obj, "stars", dict, path, default={})
    star1 = _load_deg_matrices(_want(stars, "s1", list, f"{path}.stars", default=[]), f"{path}.stars.s1")
    star2 = _load_deg_matrices(_want(stars, "s2", list, f"{path}.stars", default=[]), f"{path}.stars.s2")
    try:
        return DescentSystem(
            r_complex=r,
            nv_complex=nv,
            h_maps=h,
            sigma1=sigma,
            star1=star1 or None,
            star2=star2 or None,
            n_data=n_data,
        )
    except NovitorError as exc:
        raise InputError(path, str(exc)) from exc


def load_instance(obj, path="instance") -> MNInstance:
    name = _want(obj, "name", str, path, default="unnamed")
    dim = _want(obj, "dim", int, path, required=True)
    n_data = _want(obj, "N_data", int, path, default=DEFAULT_ORDER)
    points = []
    for i, entry in enumerate(_want(obj, "points", list, path, default=[])):
        ppath = f"{path}.points[{i}]"
        label = _want(entry, "label", str, ppath, required=True)
        index = _want(entry, "index", int, ppath, required=True)
        if index > dim:
            raise InputError(ppath, f"index {index} exceeds the declared dimension {dim}")
        try:
            points.append(CriticalPoint(label, index))
        except NovitorError as exc:
            raise InputError(ppath, str(exc)) from exc
    incidence = {}
    for i, entry in enumerate(_want(obj, "incidence", list, path, default=[])):
        ipath = f"{path}.incidence[{i}]"
        src = _want(entry, "from", str, ipath, required=True)
        dst = _want(entry, "to", str, ipath, required=True)
        coeff = entry.get("coeff", 1)
        incidence[(src, dst)] = _poly_entry(coeff, f"{ipath}.coeff")
    allow_neg = bool(obj.get("allow_negative_powers", False))
    try:
        inc = NovikovIncidence(points, incidence, n_data, allow_neg)
    except NovitorError as exc:
        raise InputError(f"{path}.incidence", str(exc)) from exc
    simplicial = None
    if obj.get("simplicial") is not None:
        simplicial = load_complex(obj["simplicial"], f"{path}.simplicial")
    orbits = None
    if obj.get("orbits") is not None:
        orbits = load_orbits(obj["orbits"], f"{path}.orbits")
    descent = None
    if obj.get("descent") is not None:
        descent = load_descent(obj["descent"], f"{path}.descent", n_data)
    homology = None
    if obj.get("homology") is not None:
        homology = load_homology({"h": obj["homology"]}, f"{path}.homology")
    comparison = None
    if obj.get("comparison") is not None:
        comparison = _load_deg_matrices(obj["comparison"], f"{path}.comparison")
    return MNInstance(
        name=name,
        dim=dim,
        points=tuple(points),
        incidence=inc,
        n_data=n_data,
        simplicial=simplicial,
        orbits=orbits,
        descent=descent,
        homology=homology,
        comparison=comparison,
    )


def load_json_file(path_str):
    try:
        with open(path_str, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise InputError(path_str, "file not found") from exc
    except json.JSONDecodeError as exc:
        raise InputError(path_str, f"invalid JSON: {exc}") from exc


def bundled_instance_names():
    base = resources.files("novitor").joinpath("instances")
    return sorted(p.name[: -len(".json")] for p in base.iterdir() if p.name.endswith(".json"))


def load_bundled_instance(name: str) -> MNInstance:
    base = resources.files("novitor").joinpath("instances").joinpath(f"{name}.json")
    try:
        obj = json.loads(base.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise InputError(name, f"no bundled instance {name!r}") from exc
    return load_instance(obj, path=name)
