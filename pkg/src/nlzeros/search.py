"""Depth-first pattern search by word insertion.

Words are text strings over "01" (Newman) or "+-" (Littlewood).  A node is
kept when its polynomial still has exactly k zeros inside and none on the
circle; long survivors are factored as prefix . period^m . suffix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from .diskcount import count_exact
from .poly import BINARY, LITTLEWOOD, NEWMAN, PM1, DomainError, Pattern, from_string, in_class, word_from_text

DEFAULT_CAP = 60


@dataclass
class SearchConfig:
    seed: str
    words: Tuple[str, ...]
    k: int
    cap: int = DEFAULT_CAP
    cls: str = NEWMAN

    def __post_init__(self):
        self.words = tuple(self.words)
        alpha = "01" if self.cls == NEWMAN else "+-"
        for w in (self.seed,) + self.words:
            if any(ch not in alpha for ch in w):
                raise DomainError(f"word {w!r} is not over {alpha!r}")
        if self.cap < 1:
            raise ValueError("cap must be positive")
        f = from_string(self.seed)
        if not in_class(f, self.cls) or (self.cls == NEWMAN and self.seed[-1] != "1"):
            raise DomainError("seed is not in the class")
        c = count_exact(f)
        if (c.inside, c.on_circle) != (self.k, 0):
            raise DomainError(f"seed has count {c}, expected N={self.k}, U=0")


@dataclass
class DiscoveredPattern:
    pattern: Pattern
    m: int
    witness: str
    k: int
    cls: str
    alternated: bool = False
    path: Tuple[str, ...] = ()

    def line(self) -> str:
        return f"{self.pattern.render()} {self.m} {self.k} {self.cls}"


@dataclass
class SearchNode:
    word: str
    parent: Optional[str]
    insert_pos: int = 0
    inserted: str = ""
    children: List[str] = field(default_factory=list)
    pruned: List[str] = field(default_factory=list)
    factored: bool = False
    viable: int = 0


@dataclass
class SearchResult:
    patterns: List[DiscoveredPattern]
    nodes: Dict[str, SearchNode]
    order: List[str]

    def terminal(self) -> List[str]:
        """Visited words below the cap that have no children at all."""
        return [w for w in self.order if not self.nodes[w].factored and self.nodes[w].viable == 0]


def _ok(word: str, k: int, cls: str) -> bool:
    # check on the word: IntPoly drops trailing zeros
    if cls == NEWMAN and not (word[0] == "1" and word[-1] == "1"):
        return False
    f = from_string(word)
    if not in_class(f, cls):
        return False
    c = count_exact(f)
    return c.inside == k and c.on_circle == 0


def insertions(u: str, W: Iterable[str]) -> List[Tuple[str, int, str]]:
    """All u'wu'' in order of split position, then W order; first occurrence kept."""
    seen = set()
    out = []
    W = list(W)
    for pos in range(len(u) + 1):
        for w in W:
            v = u[:pos] + w + u[pos:]
            if v not in seen:
                seen.add(v)
                out.append((v, pos, w))
    return out


def children(u: str, W: Iterable[str], k: int, cls: str = NEWMAN) -> List[str]:
    return [v for v, _, _ in _children(u, W, k, cls)]


def _children(u, W, k, cls):
    return [(v, p, w) for v, p, w in insertions(u, W) if _ok(v, k, cls)]


def factor_repetition(u: str) -> Tuple[str, str, int, str]:
    """u = p r^m s with m maximal; ties go to shortest r, then shortest s, then shortest p."""
    if not u:
        raise ValueError("empty word")
    n = len(u)
    best = None
    for L in range(1, n // 2 + 1):
        for i in range(n - 2 * L + 1):
            r = u[i:i + L]
            m = 1
            while u[i + m * L:i + (m + 1) * L] == r:
                m += 1
            if m < 2:
                continue
            s_len = n - i - m * L
            key = (-m, L, s_len, i)
            if best is None or key < best[0]:
                best = (key, (u[:i], r, m, u[i + m * L:]))
    if best is None:
        return "", u, 1, ""
    return best[1]


def alternate(word: str) -> str:
    """f(z) -> f(-z) on a +/- word."""
    flip = {"+": "-", "-": "+"}
    return "".join(ch if i % 2 == 0 else flip[ch] for i, ch in enumerate(word))


def _as_pattern(p: str, r: str, s: str, cls: str) -> Pattern:
    alpha = BINARY if cls == NEWMAN else PM1
    return Pattern(word_from_text(p, alpha), word_from_text(r, alpha), word_from_text(s, alpha), alpha)


def _discover(word: str, cfg: SearchConfig, path: Tuple[str, ...]) -> DiscoveredPattern:
    p, r, m, s = factor_repetition(word)
    alt = False
    if cfg.cls == LITTLEWOOD:
        w2 = alternate(word)
        p2, r2, m2, s2 = factor_repetition(w2)
        if m2 > m:
            p, r, m, s, alt = p2, r2, m2, s2, True
    return DiscoveredPattern(_as_pattern(p, r, s, cfg.cls), m, word, cfg.k, cfg.cls, alt, path)


def dfs_search(cfg: SearchConfig) -> SearchResult:
    """Depth-first growth from the seed; a word met a second time is rejected."""
    nodes: Dict[str, SearchNode] = {cfg.seed: SearchNode(cfg.seed, None)}
    order = [cfg.seed]
    found: List[DiscoveredPattern] = []
    visited = {cfg.seed}

    # explicit stack of (word, path, pending children iterator)
    def expand(word):
        if len(word) >= cfg.cap:
            nodes[word].factored = True
            return None
        kids = _children(word, cfg.words, cfg.k, cfg.cls)
        nodes[word].viable = len(kids)
        return iter(kids)

    stack = []
    it = expand(cfg.seed)
    if it is None:
        found.append(_discover(cfg.seed, cfg, (cfg.seed,)))
        return SearchResult(found, nodes, order)
    stack.append((cfg.seed, (cfg.seed,), it))
    while stack:
        word, path, it = stack[-1]
        nxt = next(it, None)
        if nxt is None:
            stack.pop()
            continue
        v, pos, w = nxt
        if v in visited:
            nodes[word].pruned.append(v)
            continue
        visited.add(v)
        nodes[v] = SearchNode(v, word, pos, w)
        nodes[word].children.append(v)
        order.append(v)
        vpath = path + (v,)
        sub = expand(v)
        if sub is None:
            found.append(_discover(v, cfg, vpath))
        else:
            stack.append((v, vpath, sub))
    return SearchResult(found, nodes, order)


def verify_path(d: DiscoveredPattern) -> bool:
    """Re-count every word on the discovery path."""
    for w in d.path:
        c = count_exact(from_string(w))
        if (c.inside, c.on_circle) != (d.k, 0):
            return False
    return True
