"""Finitely generated Fuchsian groups: orbit enumeration and counting bounds.

Enumeration walks freely reduced words breadth-first.  Pruned mode stops
expanding a node once its orbit point is farther than radius plus the
largest single-generator displacement; brute mode expands every reduced
word up to a length cap and serves as the ground-truth oracle in tests.
Elements are identified projectively (gamma and -gamma are the same
isometry) and deduplicated on sign-normalized matrix entries quantized
at 1e-7.
"""

from __future__ import annotations

import itertools
import json
import math
import os
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Iterable, Sequence

import numpy as np

from . import geometry
from .errors import (
    FrontierOverflow,
    InvalidGeometry,
    NoNonIdentityFound,
    NotDiscrete,
)
from .geometry import Isometry, Point

QUANT = 1e7          # dedup grid: entries rounded to 1e-7
PIVOT_TOL = 1e-6     # sign pivot: first entry beyond this magnitude
IDENTITY_TOL = 1e-8
FRONTIER_CAP = 10**7
_NEIGHBOR_OFFSETS = np.array(list(itertools.product((-1, 0, 1), repeat=4)), dtype=np.int64)


@dataclass(frozen=True)
class GroupElement:
    """A group element together with one freely reduced word spelling it.

    Word letters are signed 1-based generator indices: +k is generator k-1,
    -k its inverse.
    """

    matrix: Isometry
    word: tuple[int, ...]

    def word_str(self, labels: Sequence[str] | None = None) -> str:
        if not self.word:
            return "e"
        parts = []
        for code in self.word:
            i = abs(code) - 1
            lab = labels[i] if labels and i < len(labels) else f"g{i}"
            parts.append(lab if code > 0 else f"{lab}^-1")
        return " ".join(parts)


@dataclass
class GroupPresentation:
    """Generators of a discrete subgroup of the isometry group.

    `free` asserts that distinct reduced words give distinct elements, so a
    matrix collision is reported as NotDiscrete instead of deduplicated.
    `includes_inverses` means the generator list already contains every
    inverse and enumeration must not extend it.
    """

    generators: list[Isometry]
    name: str = ""
    labels: list[str] | None = None
    free: bool = False
    includes_inverses: bool = False
    injrad_hint: float | None = None
    tanglefree_L_hint: float | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        for i, g in enumerate(self.generators):
            if g.is_identity(IDENTITY_TOL):
                raise InvalidGeometry(f"generator {i} equals the identity up to sign")
        if self.labels is not None and len(self.labels) != len(self.generators):
            raise InvalidGeometry("labels must match generators in number")

    def alphabet(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(codes, matrices, inverse-position) for the expansion alphabet."""
        key = "alphabet"
        if key not in self._cache:
            if self.includes_inverses:
                mats = [np.array([g.entries() for g in self.generators]).reshape(-1, 2, 2)][0]
                codes = np.arange(1, len(self.generators) + 1, dtype=np.int64)
                inv_pos = np.full(len(self.generators), -1, dtype=np.int64)
                for i, g in enumerate(self.generators):
                    for j, h in enumerate(self.generators):
                        if g.compose(h).is_identity(IDENTITY_TOL):
                            inv_pos[i] = j
                            break
                if np.any(inv_pos < 0):
                    missing = int(np.nonzero(inv_pos < 0)[0][0])
                    raise InvalidGeometry(
                        f"includes_inverses is set but generator {missing} has no inverse in the list")
            else:
                k = len(self.generators)
                mats = np.empty((2 * k, 2, 2))
                codes = np.empty(2 * k, dtype=np.int64)
                inv_pos = np.empty(2 * k, dtype=np.int64)
                for i, g in enumerate(self.generators):
                    mats[2 * i] = np.array(g.entries()).reshape(2, 2)
                    mats[2 * i + 1] = np.array(g.inverse().entries()).reshape(2, 2)
                    codes[2 * i], codes[2 * i + 1] = i + 1, -(i + 1)
                    inv_pos[2 * i], inv_pos[2 * i + 1] = 2 * i + 1, 2 * i
            self._cache[key] = (codes, mats, inv_pos)
        return self._cache[key]


def _sign_normalize(rows: np.ndarray) -> np.ndarray:
    """Flip each row of (n, 4) entries so its first sizable entry is positive."""
    piv = np.argmax(np.abs(rows) > PIVOT_TOL, axis=1)
    s = np.sign(rows[np.arange(len(rows)), piv])
    return rows * s[:, None]


def _keys(rows: np.ndarray) -> np.ndarray:
    """Quantized projective dedup keys for (n, 4) matrix rows."""
    q = np.round(_sign_normalize(rows) * QUANT).astype(np.int64)
    return np.ascontiguousarray(q).view("|S32").ravel()


def _mobius_many(mats: np.ndarray, p: Point) -> np.ndarray:
    z = complex(p.x, p.y)
    return (mats[:, 0, 0] * z + mats[:, 0, 1]) / (mats[:, 1, 0] * z + mats[:, 1, 1])


def _dist_many(mats: np.ndarray, z: Point, w: Point) -> np.ndarray:
    gw = _mobius_many(mats, w)
    arg = 1.0 + (np.abs(gw - complex(z.x, z.y)) ** 2) / (2.0 * z.y * gw.imag)
    return np.arccosh(np.maximum(arg, 1.0))


def _brute_levels(group: GroupPresentation, max_word_len: int, cap: int) -> list[dict]:
    """All distinct elements by word length, deduplicated across levels."""
    cache_key = ("brute", max_word_len)
    if cache_key in group._cache:
        return group._cache[cache_key]
    codes, alph, inv_pos = group.alphabet()
    eye = np.eye(2)[None, :, :]
    levels = [{"mats": eye, "parent": np.array([-1]), "letter": np.array([-1]),
               "keys": _keys(eye.reshape(1, 4))}]
    seen = levels[0]["keys"].copy()
    total = 1
    for lv in range(1, max_word_len + 1):
        prev = levels[-1]
        n, k = len(prev["mats"]), len(alph)
        if n == 0:
            break
        child = np.einsum("nij,kjl->nkil", prev["mats"], alph).reshape(n * k, 2, 2)
        parent = np.repeat(np.arange(n), k)
        letter = np.tile(np.arange(k), n)
        if lv > 1:
            ok = letter != inv_pos[prev["letter"][parent]]
            child, parent, letter = child[ok], parent[ok], letter[ok]
        keys = _keys(child.reshape(-1, 4))
        _, first = np.unique(keys, return_index=True)
        if group.free and len(first) < len(keys):
            dup_key = keys[np.setdiff1d(np.arange(len(keys)), first)[0]]
            i, j = np.nonzero(keys == dup_key)[0][:2]
            wa = _reconstruct(levels, codes, lv, int(i), parent, letter)
            wb = _reconstruct(levels, codes, lv, int(j), parent, letter)
            raise NotDiscrete(f"words {wa} and {wb} give the same matrix")
        keep = np.sort(first)
        dup_old = np.isin(keys[keep], seen)
        if group.free and np.any(dup_old):
            i = int(keep[np.nonzero(dup_old)[0][0]])
            wa = _reconstruct(levels, codes, lv, i, parent, letter)
            raise NotDiscrete(f"word {wa} duplicates a shorter element")
        keep = keep[~dup_old]
        levels.append({"mats": child[keep], "parent": parent[keep],
                       "letter": letter[keep], "keys": keys[keep]})
        seen = np.union1d(seen, keys[keep])
        total += len(keep)
        if total > cap:
            raise FrontierOverflow(f"enumeration exceeded cap {cap}")
    group._cache[cache_key] = levels
    return levels


def _reconstruct(levels: list[dict], codes: np.ndarray, lv: int, idx: int,
                 parent: np.ndarray | None = None, letter: np.ndarray | None = None) -> tuple[int, ...]:
    """Word for element idx of level lv; (parent, letter) override the stored
    arrays for a level still under construction."""
    out: list[int] = []
    while lv > 0:
        pa = parent if parent is not None and lv == len(levels) else levels[lv]["parent"]
        le = letter if letter is not None and lv == len(levels) else levels[lv]["letter"]
        out.append(int(codes[le[idx]]))
        idx = int(pa[idx])
        lv -= 1
    out.reverse()
    return tuple(out)


class _Visited:
    """Projective dedup set with straddle-safe neighbor lookup."""

    def __init__(self) -> None:
        self._d: dict[bytes, tuple[int, ...]] = {}

    def __len__(self) -> int:
        return len(self._d)

    def find(self, q: np.ndarray) -> tuple[int, ...] | None:
        hit = self._d.get(q.tobytes())
        if hit is not None:
            return hit
        for off in _NEIGHBOR_OFFSETS:
            hit = self._d.get((q + off).tobytes())
            if hit is not None:
                return hit
        return None

    def add(self, q: np.ndarray, word: tuple[int, ...]) -> None:
        self._d[q.tobytes()] = word


def _quantize_one(mat: np.ndarray) -> np.ndarray:
    return np.round(_sign_normalize(mat.reshape(1, 4)) * QUANT).astype(np.int64)[0]


def enumerate_ball(group: GroupPresentation, z: Point, w: Point, radius: float,
                   mode: str = "pruned", max_word_len: int = 12,
                   frontier_cap: int = FRONTIER_CAP) -> list[GroupElement]:
    """Distinct gamma with d(z, gamma w) <= radius, sorted by (distance,
    word length, word).

    Pruned mode expands a node only while d(z, gamma w) <= radius + D_max,
    D_max being the largest displacement d(w, g w) over the alphabet; one
    more letter cannot shrink the distance by more than that.  This is a
    heuristic frontier rule: it is correct when base points sit within the
    expansion margin of each other, and brute mode is the oracle.
    """
    if not (radius >= 0.0) or not math.isfinite(radius):
        raise ValueError("radius must be a finite nonnegative number")
    if mode not in ("pruned", "brute"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "brute":
        return _enumerate_brute(group, z, w, radius, max_word_len, frontier_cap)
    return _enumerate_pruned(group, z, w, radius, frontier_cap)


def _enumerate_brute(group, z, w, radius, max_word_len, cap):
    codes, _, _ = group.alphabet()
    levels = _brute_levels(group, max_word_len, cap)
    found = []
    for lv, rec in enumerate(levels):
        if len(rec["mats"]) == 0:
            continue
        d = _dist_many(rec["mats"], z, w)
        for idx in np.nonzero(d <= radius)[0]:
            word = _reconstruct(levels, codes, lv, int(idx))
            m = rec["mats"][idx]
            found.append((float(d[idx]), len(word), word,
                          GroupElement(Isometry(m[0, 0], m[0, 1], m[1, 0], m[1, 1]), word)))
    found.sort(key=lambda t: t[:3])
    return [el for *_, el in found]


def _enumerate_pruned(group, z, w, radius, cap):
    codes, alph, inv_pos = group.alphabet()
    if len(alph) == 0:
        return [GroupElement(geometry.identity(), ())] if geometry.distance(z, w) <= radius else []
    dmax = float(np.max(_dist_many(alph, w, w)))
    threshold = radius + dmax
    visited = _Visited()
    eye = np.eye(2)
    visited.add(_quantize_one(eye), ())
    d0 = geometry.distance(z, w)
    found = []
    if d0 <= radius:
        found.append((d0, 0, (), GroupElement(geometry.identity(), ())))
    # frontier entries: (matrix, word, alphabet position of last letter)
    frontier = [(eye, (), -1)] if d0 <= threshold else []
    while frontier:
        nxt = []
        for mat, word, last in frontier:
            for pos in range(len(alph)):
                if last >= 0 and pos == inv_pos[last]:
                    continue
                child = mat @ alph[pos]
                cword = word + (int(codes[pos]),)
                q = _quantize_one(child)
                prior = visited.find(q)
                if prior is not None:
                    if group.free and prior != cword:
                        raise NotDiscrete(f"words {prior} and {cword} give the same matrix")
                    continue
                visited.add(q, cword)
                d = float(_dist_many(child[None], z, w)[0])
                if d <= radius:
                    found.append((d, len(cword), cword,
                                  GroupElement(Isometry(child[0, 0], child[0, 1],
                                                        child[1, 0], child[1, 1]), cword)))
                if d <= threshold:
                    nxt.append((child, cword, pos))
            if len(visited) > cap:
                raise FrontierOverflow(f"enumeration exceeded cap {cap}")
        frontier = nxt
    found.sort(key=lambda t: t[:3])
    return [el for *_, el in found]


def count_ball(group: GroupPresentation, z: Point, w: Point, radius: float, **kw) -> int:
    return len(enumerate_ball(group, z, w, radius, **kw))


def cyclic_count_oracle(ell: float, r: float) -> int:
    """Orbit count for a cyclic hyperbolic group, both points on the axis:
    1 + 2 floor(r / ell).  Only meaningful for r away from multiples of ell."""
    if ell <= 0.0:
        raise ValueError("translation length must be positive")
    if r < 0.0:
        return 0
    return 1 + 2 * int(math.floor(r / ell))


def default_c0(delta: float) -> float:
    """Counting-bound prefactor 3 e^(1/delta)."""
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    return 3.0 * math.exp(1.0 / delta)


@dataclass(frozen=True)
class GeometryParams:
    """Counting-bound inputs for one surface: radius of validity R, the
    basepoint constant Cx = 1/min(1, injectivity radius), and the
    delta-dependent prefactor c0."""

    R: float
    Cx: float
    injrad: float
    L: float
    c0: Callable[[float], float] = default_c0

    def __post_init__(self) -> None:
        if not (self.R > 0.0):
            raise InvalidGeometry("R must be positive")
        if not (self.Cx >= 1.0):
            raise InvalidGeometry("Cx must be at least 1")
        if not (self.injrad > 0.0):
            raise InvalidGeometry("injectivity radius must be positive")
        if not (self.L >= 2.0 * self.injrad):
            raise InvalidGeometry("tangle-free length must be at least twice the injectivity radius")

    @classmethod
    def from_bounds(cls, R: float, Cx: float, injrad: float | None = None,
                    L: float | None = None, c0: Callable[[float], float] = default_c0) -> "GeometryParams":
        """Fill injrad and L with the defaults implied by R and Cx."""
        if injrad is None:
            injrad = 1.0 / Cx if Cx >= 1.0 else 1.0
        if L is None:
            L = 4.0 * R
        return cls(R=R, Cx=Cx, injrad=injrad, L=L, c0=c0)


def params_from_tanglefree(L: float, injrad: float,
                           c0: Callable[[float], float] = default_c0) -> GeometryParams:
    """Counting parameters of an L-tangle-free surface: R = L/4."""
    if not (L > 0.0 and injrad > 0.0):
        raise InvalidGeometry("L and injrad must be positive")
    if L < 2.0 * injrad:
        raise InvalidGeometry(f"L = {L} below twice the injectivity radius {injrad}")
    return GeometryParams(R=L / 4.0, Cx=1.0 / min(1.0, injrad), injrad=injrad, L=L, c0=c0)


@dataclass(frozen=True)
class CountingEntry:
    z: tuple[float, float]
    w: tuple[float, float]
    radius: float
    count: int
    bound: float
    ratio: float
    passed: bool


@dataclass(frozen=True)
class CountingReport:
    group_name: str
    delta: float
    entries: tuple[CountingEntry, ...]
    worst_ratio: float
    all_pass: bool


def verify_counting_bound(group: GroupPresentation, params: GeometryParams,
                          pairs: Iterable[tuple[Point, Point]], radii: Iterable[float],
                          delta: float, mode: str = "pruned",
                          max_word_len: int = 12) -> CountingReport:
    """Check |{gamma : d(z, gamma w) <= r}| <= Cx c0(delta) e^(delta r)
    over the given sample pairs and radii r <= R."""
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    c0 = params.c0(delta)
    if c0 < 1.0:
        raise InvalidGeometry(f"c0({delta}) = {c0} is below 1")
    radii = list(radii)
    for r in radii:
        if r > params.R + 1e-12:
            raise ValueError(f"radius {r} exceeds the validity radius R = {params.R}")
    entries = []
    worst = 0.0
    for z, w in pairs:
        for r in radii:
            count = count_ball(group, z, w, r, mode=mode, max_word_len=max_word_len)
            bound = params.Cx * c0 * math.exp(delta * r)
            ratio = count / bound
            worst = max(worst, ratio)
            entries.append(CountingEntry((z.x, z.y), (w.x, w.y), r, count, bound,
                                         ratio, count <= bound))
    return CountingReport(group.name, delta, tuple(entries), worst,
                          all(e.passed for e in entries))


def estimate_injrad(group: GroupPresentation, sample_points: Iterable[Point],
                    max_word_len: int = 8, frontier_cap: int = FRONTIER_CAP) -> float:
    """Half the shortest displacement d(z, gamma z) over non-identity words
    up to the cap and the sampled points.  Upper estimate of the local
    injectivity radius over the sampled region."""
    if max_word_len < 1:
        raise ValueError("max_word_len must be at least 1")
    levels = _brute_levels(group, max_word_len, frontier_cap)
    mats = [rec["mats"] for rec in levels[1:] if len(rec["mats"])]
    if mats:
        stack = np.concatenate(mats)
        eye4 = np.eye(2).reshape(4)
        flat = _sign_normalize(stack.reshape(-1, 4))
        stack = stack[np.abs(flat - eye4).max(axis=1) > IDENTITY_TOL]
    else:
        stack = np.empty((0, 2, 2))
    if len(stack) == 0:
        raise NoNonIdentityFound(f"no non-identity element within word length {max_word_len}")
    best = math.inf
    for z in sample_points:
        best = min(best, float(np.min(_dist_many(stack, z, z))))
    if not math.isfinite(best):
        raise ValueError("at least one sample point is required")
    return 0.5 * best


# -- group serialization ------------------------------------------------

def group_from_dict(doc: dict) -> GroupPresentation:
    if "generators" not in doc:
        raise ValueError("group document: field 'generators' is missing")
    gens = []
    for i, row in enumerate(doc["generators"]):
        if len(row) != 4:
            raise ValueError(f"group document: generator {i} must have 4 entries")
        try:
            gens.append(Isometry(*map(float, row)))
        except InvalidGeometry as exc:
            raise ValueError(f"group document: generator {i}: {exc}") from exc
    return GroupPresentation(
        generators=gens,
        name=str(doc.get("name", "")),
        labels=list(doc["labels"]) if "labels" in doc else None,
        free=bool(doc.get("free", False)),
        includes_inverses=bool(doc.get("includes_inverses", False)),
        injrad_hint=float(doc["injrad_hint"]) if doc.get("injrad_hint") is not None else None,
        tanglefree_L_hint=(float(doc["tanglefree_L_hint"])
                           if doc.get("tanglefree_L_hint") is not None else None),
    )


SHIPPED_GROUPS = ("cyclic", "pingpong", "bolza")


def load_group(source: str) -> GroupPresentation:
    """Load a group from a JSON file path or one of the shipped names
    (with or without the .json suffix)."""
    name = source[:-5] if source.endswith(".json") else source
    if source in SHIPPED_GROUPS or (name in SHIPPED_GROUPS and not os.path.exists(source)):
        text = resources.files("hypdeloc.data").joinpath(f"{name}.json").read_text()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"group document: not valid JSON ({exc})") from exc
    return group_from_dict(doc)
