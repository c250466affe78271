"""Gray-code enumeration of Newman / Littlewood polynomials, census archives,
admissibility grids and the zero-count statistics.

Generation order (dedup ALL, Newman degree n):
  word = 1 . u . v . reverse(w) . 1 with u = G(i), w = G(j) on l = (n-1)//2
  bits and |v| = n - 1 - 2l.  i is the outer counter, j runs up for even i
  and down for odd i, and v (when present) flips direction at every step
  of the (i, j) walk.  Consecutive words therefore differ in one position.
Littlewood (normalized) words are 1 1 . G(i) on n - 1 signs.
"""

from __future__ import annotations

import json
import os
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels as K
from .diskcount import count_exact
from .poly import LITTLEWOOD, NEWMAN, IntPoly, to_string

MAGIC = b"NLZC"
VERSION = 1
HEADER = struct.Struct("<4sBBHQ")

TAG_NEWMAN = K.CLS_NEWMAN
TAG_LITTLEWOOD_NORM = K.CLS_LITTLEWOOD_NORM
TAG_LITTLEWOOD_ALL = K.CLS_LITTLEWOOD_ALL

# images of one normalized Littlewood polynomial under +-f(+-z)
LITTLEWOOD_SYMMETRY = 4


class Dedup(str, Enum):
    ALL = "all"
    ONE_PER_RECIPROCAL_PAIR = "pairs"
    EXCLUDE_SELF_RECIPROCAL = "nonself"


def gray(x: int) -> int:
    return x ^ (x >> 1)


def gray_inverse(g: int) -> int:
    x = g
    s = 1
    while (g >> s) > 0:
        x ^= g >> s
        s += 1
    return x


# Newman

def _newman_layout(n: int) -> Tuple[int, int]:
    l = (n - 1) // 2
    return l, n - 1 - 2 * l


def _newman_word(n: int, i: int, j: int, v: int) -> List[int]:
    l, vl = _newman_layout(n)
    c = [0] * (n + 1)
    c[0] = 1
    c[n] = 1
    gu, gw = gray(i), gray(j)
    for b in range(l):
        c[1 + b] = (gu >> b) & 1
        c[n - 1 - b] = (gw >> b) & 1
    if vl:
        c[1 + l] = v
    return c


def newman_count(n: int, dedup: Dedup = Dedup.ALL) -> int:
    if n == 1:
        return 1 if dedup != Dedup.EXCLUDE_SELF_RECIPROCAL else 0
    l, vl = _newman_layout(n)
    size = 1 << l
    if dedup == Dedup.ALL:
        pairs = size * size
    elif dedup == Dedup.ONE_PER_RECIPROCAL_PAIR:
        pairs = size * (size + 1) // 2
    else:
        pairs = size * (size - 1) // 2
    return pairs << vl


def newman_iter(n: int, dedup: Dedup = Dedup.ALL) -> Iterator[IntPoly]:
    """Newman polynomials of degree n in Gray order.

    ONE_PER_RECIPROCAL_PAIR keeps i <= j (f* swaps i and j),
    EXCLUDE_SELF_RECIPROCAL keeps i < j; both v values are kept.
    """
    for c in newman_iter_coeffs(n, dedup):
        yield IntPoly(c)


def newman_iter_coeffs(n: int, dedup: Dedup = Dedup.ALL) -> Iterator[List[int]]:
    if n < 1:
        raise ValueError("degree must be >= 1")
    dedup = Dedup(dedup)
    if n == 1:
        if dedup != Dedup.EXCLUDE_SELF_RECIPROCAL:
            yield [1, 1]
        return
    l, vl = _newman_layout(n)
    size = 1 << l
    step = 0
    for i in range(size):
        if dedup == Dedup.ALL:
            lo = 0
        elif dedup == Dedup.ONE_PER_RECIPROCAL_PAIR:
            lo = i
        else:
            lo = i + 1
        js = range(lo, size)
        if i % 2:
            js = reversed(js)
        for j in js:
            if vl:
                vs = (0, 1) if step % 2 == 0 else (1, 0)
                for v in vs:
                    yield _newman_word(n, i, j, v)
            else:
                yield _newman_word(n, i, j, 0)
            step += 1


def newman_from_index(n: int, idx: int) -> IntPoly:
    """Inverse of the ALL generation order."""
    total = newman_count(n)
    if not 0 <= idx < total:
        raise IndexError(idx)
    out = np.zeros(n + 1, np.int64)
    K.newman_coeffs(idx, n, out)
    return IntPoly(out.tolist())


def newman_index_of(f: IntPoly) -> int:
    """Generation index of f in the ALL order."""
    c = list(f.coeffs)
    n = len(c) - 1
    if n == 1:
        return 0
    l, vl = _newman_layout(n)
    gu = sum(c[1 + b] << b for b in range(l))
    gw = sum(c[n - 1 - b] << b for b in range(l))
    i, j = gray_inverse(gu), gray_inverse(gw)
    size = 1 << l
    jpos = j if i % 2 == 0 else size - 1 - j
    s = i * size + jpos
    if not vl:
        return s
    v = c[1 + l]
    vpos = v if s % 2 == 0 else 1 - v
    return 2 * s + vpos


# Littlewood

def littlewood_count(n: int, normalized: bool = True) -> int:
    return 1 << (n - 1) if normalized else 1 << (n + 1)


def littlewood_iter_coeffs(n: int, normalized: bool = True) -> Iterator[List[int]]:
    if n < 1:
        raise ValueError("degree must be >= 1")
    if normalized:
        for i in range(1 << (n - 1)):
            g = gray(i)
            yield [1, 1] + [1 if (g >> b) & 1 else -1 for b in range(n - 1)]
    else:
        for i in range(1 << (n + 1)):
            g = gray(i)
            yield [1 if (g >> b) & 1 else -1 for b in range(n + 1)]


def littlewood_iter(n: int, normalized: bool = True) -> Iterator[IntPoly]:
    """normalized: a_0 = a_1 = 1, one representative of {+-f(+-z)}."""
    for c in littlewood_iter_coeffs(n, normalized):
        yield IntPoly(c)


def littlewood_from_index(n: int, idx: int, normalized: bool = True) -> IntPoly:
    if not 0 <= idx < littlewood_count(n, normalized):
        raise IndexError(idx)
    out = np.zeros(n + 1, np.int64)
    K.littlewood_coeffs(idx, n, normalized, out)
    return IntPoly(out.tolist())


def littlewood_index_of(f: IntPoly, normalized: bool = True) -> int:
    c = list(f.coeffs)
    if normalized:
        g = sum((1 if x > 0 else 0) << b for b, x in enumerate(c[2:]))
    else:
        g = sum((1 if x > 0 else 0) << b for b, x in enumerate(c))
    return gray_inverse(g)


def symmetry_images(f: IntPoly) -> List[IntPoly]:
    alt = IntPoly(c if i % 2 == 0 else -c for i, c in enumerate(f.coeffs))
    return [f, -f, alt, -alt]


# archive

def class_tag(cls: str, normalized: bool = True) -> int:
    if cls == NEWMAN:
        return TAG_NEWMAN
    if cls == LITTLEWOOD:
        return TAG_LITTLEWOOD_NORM if normalized else TAG_LITTLEWOOD_ALL
    raise ValueError(f"unknown class {cls!r}")


def tag_class(tag: int) -> Tuple[str, bool]:
    return {TAG_NEWMAN: (NEWMAN, True), TAG_LITTLEWOOD_NORM: (LITTLEWOOD, True),
            TAG_LITTLEWOOD_ALL: (LITTLEWOOD, False)}[tag]


def record_count(tag: int, n: int) -> int:
    cls, norm = tag_class(tag)
    return newman_count(n) if cls == NEWMAN else littlewood_count(n, norm)


def poly_from_index(tag: int, n: int, idx: int) -> IntPoly:
    cls, norm = tag_class(tag)
    if cls == NEWMAN:
        return newman_from_index(n, idx)
    return littlewood_from_index(n, idx, norm)


@dataclass
class ScanArchive:
    tag: int
    degree: int
    N: np.ndarray
    U: np.ndarray

    @property
    def count(self) -> int:
        return len(self.N)

    def to_bytes(self) -> bytes:
        body = np.empty(2 * self.count, np.uint8)
        body[0::2] = self.N
        body[1::2] = self.U
        return HEADER.pack(MAGIC, VERSION, self.tag, self.degree, self.count) + body.tobytes()

    def write(self, path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_bytes(self.to_bytes())
        os.replace(tmp, path)

    @classmethod
    def read(cls, path) -> "ScanArchive":
        raw = Path(path).read_bytes()
        if len(raw) < HEADER.size:
            raise ValueError("truncated archive header")
        magic, ver, tag, deg, cnt = HEADER.unpack_from(raw)
        if magic != MAGIC or ver != VERSION:
            raise ValueError("not a version-1 NLZC archive")
        body = np.frombuffer(raw, np.uint8, offset=HEADER.size)
        if len(body) != 2 * cnt:
            raise ValueError("record count does not match body length")
        arc = cls(tag, deg, body[0::2].copy(), body[1::2].copy())
        if np.any(arc.N.astype(int) + arc.U > deg):
            raise ValueError("record with N + U > degree")
        return arc

    @property
    def cls(self) -> str:
        return tag_class(self.tag)[0]

    def poly(self, idx: int) -> IntPoly:
        return poly_from_index(self.tag, self.degree, idx)


def archive_name(tag: int, n: int) -> str:
    prefix = {TAG_NEWMAN: "newman", TAG_LITTLEWOOD_NORM: "littlewood", TAG_LITTLEWOOD_ALL: "littlewood_all"}[tag]
    return f"{prefix}_{n:03d}.nlzc"


# scanning

class ScanError(ArithmeticError):
    def __init__(self, index: int, cause: Exception):
        super().__init__(f"count failed at generation index {index}: {cause}")
        self.index = index


_TABLES: Dict[int, tuple] = {}


def _tables(n: int):
    if n not in _TABLES:
        _TABLES[n] = K.cyclotomic_tables(n)
    return _TABLES[n]


def _grid_size(n: int) -> int:
    m = 32
    while m < 2 * (n + 1):
        m *= 2
    return m


def scan_range(tag: int, n: int, start: int, stop: int) -> Tuple[np.ndarray, np.ndarray, int]:
    """(N, U) records for indices [start, stop); flagged kernel results are recounted exactly."""
    orders, phis, deg = _tables(n)
    N = np.empty(stop - start, np.uint8)
    U = np.empty(stop - start, np.uint8)
    K.scan_block(tag, n, start, stop, orders, phis, deg, _grid_size(n), 24, N, U)
    flagged = np.nonzero(N == K.FLAG)[0]
    for off in flagged:
        idx = start + int(off)
        try:
            c = count_exact(poly_from_index(tag, n, idx))
        except Exception as e:  # pragma: no cover - surfaced with the index
            raise ScanError(idx, e) from e
        N[off] = c.inside
        U[off] = c.on_circle
    return N, U, len(flagged)


def _scan_job(args):
    return scan_range(*args)


def scan_records(tag: int, n: int, jobs: int = 1, block: int = 1 << 16) -> Tuple[np.ndarray, np.ndarray, int]:
    total = record_count(tag, n)
    spans = [(tag, n, s, min(s + block, total)) for s in range(0, total, block)]
    N = np.empty(total, np.uint8)
    U = np.empty(total, np.uint8)
    nflag = 0
    if jobs > 1 and len(spans) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_scan_job, spans))
    else:
        results = (scan_range(*s) for s in spans)
    for (_, _, s, e), (bn, bu, nf) in zip(spans, results):
        N[s:e] = bn
        U[s:e] = bu
        nflag += nf
    return N, U, nflag


@dataclass
class DegreeStats:
    degree: int
    cls: str
    weight: int
    hist_all: List[int]
    hist_u0: List[int]
    flagged: int = 0

    @property
    def total(self) -> int:
        return self.weight * sum(self.hist_all)

    @property
    def total_u0(self) -> int:
        return self.weight * sum(self.hist_u0)

    @staticmethod
    def _moments(h: Sequence[int]) -> Tuple[Optional[Fraction], Optional[Fraction]]:
        tot = sum(h)
        if tot == 0:
            return None, None
        s1 = sum(k * c for k, c in enumerate(h))
        s2 = sum(k * k * c for k, c in enumerate(h))
        mean = Fraction(s1, tot)
        return mean, Fraction(s2, tot) - mean * mean

    @property
    def mean(self) -> Fraction:
        return self._moments(self.hist_all)[0]

    @property
    def variance(self) -> Fraction:
        return self._moments(self.hist_all)[1]

    @property
    def conditional_mean(self) -> Optional[Fraction]:
        return self._moments(self.hist_u0)[0]

    @property
    def conditional_variance(self) -> Optional[Fraction]:
        return self._moments(self.hist_u0)[1]

    def rows(self):
        for k in range(self.degree + 1):
            yield self.degree, k, self.weight * self.hist_all[k], self.weight * self.hist_u0[k]

    def merge(self, other: "DegreeStats") -> "DegreeStats":
        if (other.degree, other.cls, other.weight) != (self.degree, self.cls, self.weight):
            raise ValueError("incompatible stats")
        return DegreeStats(self.degree, self.cls, self.weight,
                           [a + b for a, b in zip(self.hist_all, other.hist_all)],
                           [a + b for a, b in zip(self.hist_u0, other.hist_u0)],
                           self.flagged + other.flagged)


def stats_from_records(cls: str, n: int, N: np.ndarray, U: np.ndarray, weight: int = 1) -> DegreeStats:
    h_all = np.bincount(N, minlength=n + 1)[: n + 1]
    h_u0 = np.bincount(N[U == 0], minlength=n + 1)[: n + 1]
    return DegreeStats(n, cls, weight, [int(x) for x in h_all], [int(x) for x in h_u0])


def stats_from_archive(arc: ScanArchive) -> DegreeStats:
    w = LITTLEWOOD_SYMMETRY if arc.tag == TAG_LITTLEWOOD_NORM else 1
    return stats_from_records(arc.cls, arc.degree, arc.N, arc.U, w)


def scan_degree(cls: str, n: int, archive_path=None, jobs: int = 1, normalized: bool = True,
                block: int = 1 << 16) -> DegreeStats:
    """Exhaustive (N, U) census for one degree; archive is written in generation order.

    Littlewood scans default to the normalized set; statistics carry weight 4
    because N and U are invariant under f -> +-f(+-z).
    """
    tag = class_tag(cls, normalized)
    N, U, nflag = scan_records(tag, n, jobs, block)
    if archive_path is not None:
        ScanArchive(tag, n, N, U).write(archive_path)
    st = stats_from_archive(ScanArchive(tag, n, N, U))
    st.flagged = nflag
    return st


def load_archives(directory, cls: str) -> Dict[int, ScanArchive]:
    out = {}
    d = Path(directory)
    if not d.is_dir():
        return out
    for p in sorted(d.glob("*.nlzc")):
        try:
            arc = ScanArchive.read(p)
        except ValueError:
            continue
        if arc.cls == cls:
            # prefer the normalized Littlewood archive if both exist
            if arc.degree in out and out[arc.degree].tag == TAG_LITTLEWOOD_NORM:
                continue
            out[arc.degree] = arc
    return out


# grid

class Status(str, Enum):
    ADMISSIBLE = "ADMISSIBLE"
    INADMISSIBLE = "INADMISSIBLE"
    UNKNOWN = "UNKNOWN"


@dataclass
class GridCell:
    k: int
    n: int
    status: Status
    witness: Optional[IntPoly] = None
    index: Optional[int] = None


@dataclass
class AdmissibilityGrid:
    cls: str
    n_max: int
    cells: Dict[Tuple[int, int], GridCell] = field(default_factory=dict)

    def status(self, k: int, n: int) -> Status:
        return self.cells[(k, n)].status

    def inadmissible(self) -> List[Tuple[int, int]]:
        return sorted(key for key, c in self.cells.items() if c.status == Status.INADMISSIBLE)

    def to_csv(self) -> str:
        lines = ["k,n,status,witness"]
        for n in range(1, self.n_max + 1):
            for k in range(1, n):
                c = self.cells[(k, n)]
                w = to_string(c.witness) if c.witness is not None else ""
                lines.append(f"{k},{n},{c.status.value},{w}")
        return "\n".join(lines) + "\n"

    def to_pgm(self, cell: int = 4) -> bytes:
        """Raster with n down the rows and k across (binary PGM)."""
        shade = {Status.ADMISSIBLE: 190, Status.INADMISSIBLE: 40, Status.UNKNOWN: 255}
        w = h = (self.n_max + 1) * cell
        img = np.full((h, w), 255, np.uint8)
        for (k, n), c in self.cells.items():
            img[n * cell:(n + 1) * cell, k * cell:(k + 1) * cell] = shade[c.status]
        return f"P5\n{w} {h}\n255\n".encode() + img.tobytes()

    def reflection_consistent(self) -> bool:
        for (k, n), c in self.cells.items():
            o = self.cells[(n - k, n)]
            if Status.UNKNOWN not in (c.status, o.status) and c.status != o.status:
                return False
        return True


def build_grid(cls: str, n_max: int, archives) -> AdmissibilityGrid:
    """archives: directory path or {degree: ScanArchive}."""
    if not isinstance(archives, dict):
        archives = load_archives(archives, cls)
    grid = AdmissibilityGrid(cls, n_max)
    for n in range(1, n_max + 1):
        arc = archives.get(n)
        for k in range(1, n):
            if arc is None:
                grid.cells[(k, n)] = GridCell(k, n, Status.UNKNOWN)
                continue
            hit = np.nonzero((arc.N == k) & (arc.U == 0))[0]
            if len(hit):
                idx = int(hit[0])
                grid.cells[(k, n)] = GridCell(k, n, Status.ADMISSIBLE, arc.poly(idx), idx)
            else:
                grid.cells[(k, n)] = GridCell(k, n, Status.INADMISSIBLE)
    return grid


def extract(archive: ScanArchive, predicate: Callable[[int, int], bool]) -> List[Tuple[int, IntPoly]]:
    pred = np.vectorize(predicate, otypes=[bool])
    hits = np.nonzero(pred(archive.N.astype(int), archive.U.astype(int)))[0]
    return [(int(i), archive.poly(int(i))) for i in hits]


def fit_line(points: Sequence[Tuple[float, float]]) -> Tuple[float, float]:
    """Ordinary least squares y = slope * x + intercept."""
    pts = list(points)
    if len(pts) < 2:
        raise ValueError("need at least two points")
    xs = [Fraction(x) for x, _ in pts]
    ys = [Fraction(y) for _, y in pts]
    n = len(pts)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        raise ValueError("degenerate x values")
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx
    return float(slope), float(my - slope * mx)


# stats export

def stats_csv(stats: Sequence[DegreeStats]) -> str:
    lines = ["degree,k,count_all,count_U0"]
    for st in stats:
        for row in st.rows():
            lines.append(",".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def _frac(x: Optional[Fraction]):
    return None if x is None else {"num": x.numerator, "den": x.denominator, "value": float(x)}


def stats_summary(stats: Sequence[DegreeStats]) -> dict:
    per = {}
    for st in stats:
        per[str(st.degree)] = {
            "class": st.cls,
            "total": st.total,
            "total_U0": st.total_u0,
            "mean": _frac(st.mean),
            "variance": _frac(st.variance),
            "conditional_mean": _frac(st.conditional_mean),
            "conditional_variance": _frac(st.conditional_variance),
        }
    fits = {}
    v = [(st.degree, st.variance) for st in stats if st.variance is not None]
    cv = [(st.degree, st.conditional_variance) for st in stats if st.conditional_variance is not None]
    if len(v) >= 2:
        fits["variance"] = dict(zip(("slope", "intercept"), fit_line(v)))
    if len(cv) >= 2:
        fits["conditional_variance"] = dict(zip(("slope", "intercept"), fit_line(cv)))
    return {"degrees": per, "fits": fits}


def zscore_rows(st: DegreeStats, conditional: bool = False):
    h = st.hist_u0 if conditional else st.hist_all
    mean = st.conditional_mean if conditional else st.mean
    var = st.conditional_variance if conditional else st.variance
    tot = sum(h)
    if not tot or not var:
        return []
    sd = float(var) ** 0.5
    return [(st.degree, k, (k - float(mean)) / sd, c / tot * sd) for k, c in enumerate(h) if c]


def write_stats(stats: Sequence[DegreeStats], outdir) -> List[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    cls = stats[0].cls if stats else "none"
    written = []
    p = outdir / f"{cls}_counts.csv"
    p.write_text(stats_csv(stats))
    written.append(p)
    p = outdir / f"{cls}_summary.json"
    p.write_text(json.dumps(stats_summary(stats), indent=2, sort_keys=True) + "\n")
    written.append(p)
    for cond in (False, True):
        tagname = "U0" if cond else "all"
        p = outdir / f"{cls}_hist_{tagname}.csv"
        lines = ["degree,k,frequency"]
        for st in stats:
            h = st.hist_u0 if cond else st.hist_all
            tot = sum(h)
            for k, c in enumerate(h):
                if tot:
                    lines.append(f"{st.degree},{k},{c / tot:.12g}")
        p.write_text("\n".join(lines) + "\n")
        written.append(p)
        p = outdir / f"{cls}_zscore_{tagname}.csv"
        lines = ["degree,k,z,density"]
        for st in stats:
            for d, k, z, dens in zscore_rows(st, cond):
                lines.append(f"{d},{k},{z:.12g},{dens:.12g}")
        p.write_text("\n".join(lines) + "\n")
        written.append(p)
    return written
