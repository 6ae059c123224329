"""Exhaustive search for suitable cores.

The search builds tables row by row in nondecreasing lexicographic order with
the identity permutation as the first row.  Every suitable core is equivalent
under relabeling and row reordering to one of that shape, and in fact to its
canonical form: the lexicographically least sorted table over all symbol
relabelings.  Being canonical passes to the leading rows of a sorted table,
so partial tables that are not canonical are discarded.

Feasibility is tested for all children of a node at once.  For a symbol s and
a set T of other symbols, the rows in which s is preceded only by elements of
T must number at least ``t + 1 - v + |T|``.  A child is dropped when

* some (s, T) deficit exceeds the number of rows still to be placed, or
* for some symbol set S, the deficits of (s, [v] minus S) summed over s in S
  exceed it.  A row can serve at most one of those conditions (the one for
  whichever symbol of S comes first), so the sum is a valid bound.  With S
  the full symbol set this is the count of rows each symbol must still start.

A permutation dropped at some node would also be dropped at every descendant,
so each child inherits only the surviving candidates of its parent.
"""

from __future__ import annotations

import logging
import multiprocessing as mp
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .errors import PreconditionError
from .model import PermTable, Role, is_core, prefix_masks

log = logging.getLogger(__name__)

FOUND = "found"
EXHAUSTED = "exhausted-none"
ABORTED = "aborted"

MAX_SEARCH_SYMBOLS = 7
DEFAULT_MAX_NODES = 10 ** 8
PRUNE_KINDS = ("deficit", "start_count", "disjoint_sum", "canonical", "dominance")


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int | None = DEFAULT_MAX_NODES
    max_seconds: float | None = None
    workers: int = 1

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class SearchStats:
    nodes: int = 0
    max_depth: int = 0
    elapsed: float = 0.0
    prunes: dict = field(default_factory=lambda: dict.fromkeys(PRUNE_KINDS, 0))

    def merge(self, other: "SearchStats"):
        self.nodes += other.nodes
        self.max_depth = max(self.max_depth, other.max_depth)
        for k, n in other.prunes.items():
            self.prunes[k] = self.prunes.get(k, 0) + n

    def as_dict(self, timing: bool = False) -> dict:
        d = {"nodes": self.nodes, "max_depth": self.max_depth, "prunes": dict(self.prunes)}
        if timing:
            d["elapsed"] = round(self.elapsed, 6)
        return d


@dataclass
class SearchOutcome:
    status: str
    params: tuple[int, int, int]
    witness: PermTable | None = None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def found(self) -> bool:
        return self.status == FOUND

    @property
    def exhausted(self) -> bool:
        return self.status == EXHAUSTED

    def report(self, timing: bool = False) -> dict:
        N, v, t = self.params
        return {
            "N": N, "v": v, "t": t,
            "status": self.status,
            "stats": self.stats.as_dict(timing),
            "witness": [list(r) for r in self.witness.rows] if self.witness is not None else None,
        }


class _Abort(Exception):
    pass


class _Stop(Exception):
    """Another worker already found a witness."""


class Problem:
    """Precomputed tables for one (N, v, t) existence question."""

    def __init__(self, N: int, v: int, t: int):
        self.N, self.v, self.t = N, v, t
        self.perms = list(permutations(range(1, v + 1)))
        P = len(self.perms)
        full = (1 << v) - 1

        cols, req = [], []
        for s in range(1, v + 1):
            others = full & ~(1 << (s - 1))
            T = others
            while True:
                r = t + 1 - v + T.bit_count()
                if r > 0:
                    cols.append((s, T))
                    req.append(r)
                if T == 0:
                    break
                T = (T - 1) & others
        self.cols = cols
        self.col_index = {c: i for i, c in enumerate(cols)}
        self.req = np.asarray(req, dtype=np.int16)
        C = len(cols)

        pm = np.array([prefix_masks(p)[1:] for p in self.perms], dtype=np.int64).reshape(P, v)
        inc = np.zeros((P, C), dtype=np.int16)
        for i, (s, T) in enumerate(cols):
            inc[:, i] = (pm[:, s - 1] & ~T) == 0
        self.inc = inc

        # condition columns for each symbol set S with |S| >= 2, padded with a zero column
        groups = []
        self.full_group = None
        for S in range(1, full + 1):
            if S.bit_count() < 2:
                continue
            rest = full & ~S
            idx = [self.col_index.get((s, rest), C) for s in range(1, v + 1) if S >> (s - 1) & 1]
            if all(i == C for i in idx):
                continue
            if S == full:
                self.full_group = len(groups)
            groups.append(idx + [C] * (v - len(idx)))
        self.groups = np.asarray(groups, dtype=np.intp).reshape(len(groups), v)

        self._codes = None
        self._rel = {}

    # -- relabeling ---------------------------------------------------------

    def relabel_row(self, r: int) -> np.ndarray:
        """``out[p]`` is the index of perm p after relabeling that turns perm r into the identity."""
        out = self._rel.get(r)
        if out is None:
            v = self.v
            A = np.asarray(self.perms, dtype=np.int64).reshape(len(self.perms), v)
            if self._codes is None:
                self._codes = A @ ((v + 1) ** np.arange(v - 1, -1, -1, dtype=np.int64))
            inv = np.zeros(v + 1, dtype=np.int64)
            inv[list(self.perms[r])] = np.arange(1, v + 1)
            codes = inv[A] @ ((v + 1) ** np.arange(v - 1, -1, -1, dtype=np.int64))
            out = np.searchsorted(self._codes, codes)
            self._rel[r] = out
        return out

    def is_canonical(self, rows: list[int]) -> bool:
        arr = np.asarray(rows)
        for r in sorted(set(rows)):
            if r == 0:
                continue
            img = np.sort(self.relabel_row(r)[arr]).tolist()
            if img < rows:
                return False
        return True

    def table(self, rows) -> PermTable:
        return PermTable(tuple(self.perms[i] for i in rows), Role.CORE, self.v)


class _Searcher:
    def __init__(self, problem: Problem, budget: SearchBudget, canonical: bool, dominance: bool,
                 stop_event=None, shared_nodes=None):
        self.pb = problem
        self.budget = budget
        self.canonical = canonical and not dominance
        self.dominance = dominance
        self.stats = SearchStats()
        self.stop_event = stop_event
        self.shared_nodes = shared_nodes
        self._unshared = 0
        self.t0 = time.perf_counter()

    def _tick(self, depth: int):
        st = self.stats
        st.nodes += 1
        if depth > st.max_depth:
            st.max_depth = depth
        b = self.budget
        total = st.nodes
        if self.shared_nodes is not None:
            self._unshared += 1
            if self._unshared >= 64:
                with self.shared_nodes.get_lock():
                    self.shared_nodes.value += self._unshared
                    total = self.shared_nodes.value
                self._unshared = 0
            else:
                total = self.shared_nodes.value + self._unshared
        if b.max_nodes is not None and total > b.max_nodes:
            raise _Abort
        if b.max_seconds is not None and (st.nodes & 63) == 0 and time.perf_counter() - self.t0 > b.max_seconds:
            raise _Abort
        if self.stop_event is not None and (st.nodes & 63) == 0 and self.stop_event.is_set():
            raise _Stop

    def children(self, counts: np.ndarray, pool: np.ndarray, remaining: int):
        """Surviving candidate rows and their condition counts, ``remaining`` rows after them."""
        pb, pr = self.pb, self.stats.prunes
        newc = counts[None, :] + pb.inc[pool]
        deficit = pb.req[None, :] - newc
        if deficit.shape[1]:
            ok = deficit.max(axis=1) <= remaining
            pr["deficit"] += int(len(ok) - ok.sum())
            pool, newc, deficit = pool[ok], newc[ok], deficit[ok]
        if len(pool) and len(pb.groups):
            pos = np.concatenate([np.maximum(deficit, 0), np.zeros((len(pool), 1), dtype=deficit.dtype)], axis=1)
            sums = pos[:, pb.groups].sum(axis=2)
            if pb.full_group is not None:
                ok = sums[:, pb.full_group] <= remaining
                pr["start_count"] += int(len(ok) - ok.sum())
                pool, newc, sums = pool[ok], newc[ok], sums[ok]
            ok = (sums <= remaining).all(axis=1)
            pr["disjoint_sum"] += int(len(ok) - ok.sum())
            pool, newc = pool[ok], newc[ok]
        return pool, newc

    def ordered_children(self, rows, counts, pool, remaining):
        """Yield (row, counts, pool) for children to visit, after canonical/dominance filtering."""
        cand, newc = self.children(counts, pool, remaining)
        unsat = counts < self.pb.req
        seen = set()
        for i in range(len(cand)):
            p = int(cand[i])
            new_rows = rows + [p]
            if self.canonical and not self.pb.is_canonical(new_rows):
                self.stats.prunes["canonical"] += 1
                continue
            if self.dominance:
                key = newc[i][unsat].tobytes()
                if key in seen:
                    self.stats.prunes["dominance"] += 1
                    continue
                seen.add(key)
            yield new_rows, newc[i], cand[i:]

    def dfs(self, rows: list[int], counts: np.ndarray, pool: np.ndarray):
        self._tick(len(rows))
        remaining = self.pb.N - len(rows) - 1
        if remaining == 0:
            cand, _ = self.children(counts, pool, 0)
            return rows + [int(cand[0])] if len(cand) else None
        for new_rows, c, sub in self.ordered_children(rows, counts, pool, remaining):
            res = self.dfs(new_rows, c, sub)
            if res is not None:
                return res
        return None

    def root(self):
        """State after the fixed identity row, or None when infeasible."""
        pb = self.pb
        self._tick(0)
        zero = np.zeros(len(pb.req), dtype=np.int16)
        cand, newc = self.children(zero, np.array([0]), pb.N - 1)
        if not len(cand):
            return None
        return [0], newc[0], np.arange(len(pb.perms))


def _trivial_outcome(N, v, t, t0):
    if v == 0:
        return SearchOutcome(FOUND, (N, v, t), PermTable(tuple(() for _ in range(N)), Role.CORE, 0),
                             SearchStats(elapsed=time.perf_counter() - t0))
    if N == 0:
        return SearchOutcome(EXHAUSTED, (N, v, t), None, SearchStats(elapsed=time.perf_counter() - t0))
    return None


def exists_core(N: int, v: int, t: int, budget: SearchBudget | None = None, *,
                canonical: bool = True, dominance: bool = False) -> SearchOutcome:
    """Decide whether an (N, v, t)-suitable core exists.

    Returns ``found`` with a witness, ``exhausted-none`` after a complete
    search, or ``aborted`` when the budget ran out.  ``dominance`` skips a
    candidate row that adds the same counts to every unmet condition as an
    earlier sibling; it cannot be combined with canonical pruning, which it
    replaces.
    """
    budget = budget or SearchBudget()
    t0 = time.perf_counter()
    if N < 0 or v < 0 or t < 1:
        raise PreconditionError(f"bad parameters N={N}, v={v}, t={t}")
    if v > MAX_SEARCH_SYMBOLS:
        raise PreconditionError(f"search supports v <= {MAX_SEARCH_SYMBOLS}, got v={v}")
    trivial = _trivial_outcome(N, v, t, t0)
    if trivial is not None:
        return trivial
    pb = Problem(N, v, t)
    if budget.workers > 1:
        out = _parallel(pb, budget, canonical, dominance)
    else:
        out = _serial(pb, budget, canonical, dominance)
    out.stats.elapsed = time.perf_counter() - t0
    if out.witness is not None:
        assert is_core(out.witness, t), "search produced an invalid witness"
    log.debug("exists_core(%d,%d,%d): %s after %d nodes", N, v, t, out.status, out.stats.nodes)
    return out


def _serial(pb, budget, canonical, dominance) -> SearchOutcome:
    s = _Searcher(pb, budget, canonical, dominance)
    params = (pb.N, pb.v, pb.t)
    try:
        start = s.root()
        if start is None:
            return SearchOutcome(EXHAUSTED, params, None, s.stats)
        rows, counts, pool = start
        res = [0] if pb.N == 1 else s.dfs(rows, counts, pool)
    except _Abort:
        return SearchOutcome(ABORTED, params, None, s.stats)
    if res is None:
        return SearchOutcome(EXHAUSTED, params, None, s.stats)
    return SearchOutcome(FOUND, params, pb.table(res), s.stats)


# -- parallel driver ---------------------------------------------------------

_worker_state = {}


def _init_worker(stop_event, shared_nodes):
    _worker_state["stop"] = stop_event
    _worker_state["nodes"] = shared_nodes


def _run_subtree(args):
    N, v, t, budget, canonical, dominance, index = args
    pb = _worker_state.get("pb")
    if pb is None or (pb.N, pb.v, pb.t) != (N, v, t):
        pb = _worker_state["pb"] = Problem(N, v, t)
    s = _Searcher(pb, budget, canonical, dominance, _worker_state["stop"], _worker_state["nodes"])
    rows, counts, pool = s.root()
    kids = list(s.ordered_children(rows, counts, pool, pb.N - 2))
    s.stats = SearchStats()
    new_rows, c, sub = kids[index]
    try:
        res = new_rows if pb.N == 2 else s.dfs(new_rows, c, sub)
    except _Abort:
        return ABORTED, None, s.stats
    except _Stop:
        return "stopped", None, s.stats
    if res is not None:
        _worker_state["stop"].set()
        return FOUND, res, s.stats
    return EXHAUSTED, None, s.stats


def _parallel(pb, budget, canonical, dominance) -> SearchOutcome:
    params = (pb.N, pb.v, pb.t)
    s = _Searcher(pb, budget, canonical, dominance)
    start = s.root()
    if start is None:
        return SearchOutcome(EXHAUSTED, params, None, s.stats)
    if pb.N == 1:
        return SearchOutcome(FOUND, params, pb.table([0]), s.stats)
    rows, counts, pool = start
    kids = list(s.ordered_children(rows, counts, pool, pb.N - 2))
    stats = s.stats
    if not kids:
        return SearchOutcome(EXHAUSTED, params, None, stats)

    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
    stop = ctx.Event()
    shared = ctx.Value("q", stats.nodes)
    jobs = [(pb.N, pb.v, pb.t, budget, canonical, dominance, i) for i in range(len(kids))]
    statuses, witness = [], None
    with ProcessPoolExecutor(budget.workers, mp_context=ctx, initializer=_init_worker,
                             initargs=(stop, shared)) as ex:
        for status, res, st in ex.map(_run_subtree, jobs):
            stats.merge(st)
            statuses.append(status)
            if status == FOUND and witness is None:
                witness = res
    if witness is not None:
        return SearchOutcome(FOUND, params, pb.table(witness), stats)
    if ABORTED in statuses:
        return SearchOutcome(ABORTED, params, None, stats)
    return SearchOutcome(EXHAUSTED, params, None, stats)


# -- canonical form ----------------------------------------------------------

def canonical_form(table: PermTable) -> PermTable:
    """The least sorted table obtainable by relabeling symbols.

    The least table starts with the identity permutation, so only the
    relabelings sending some row to the identity need to be tried.
    """
    v = table.v
    best = tuple(sorted(table.rows))
    for row in set(table.rows):
        label = {s: i + 1 for i, s in enumerate(row)}
        img = tuple(sorted(tuple(label[x] for x in r) for r in table.rows))
        if img < best:
            best = img
    return PermTable(best, Role.CORE, v)


# -- exact values ------------------------------------------------------------

EXACT_STATUS, CAPPED, ABORTED_RESULT = "exact", "capped", "aborted"


@dataclass
class ExactResult:
    """``value`` is exact for status ``exact``; a lower bound (scn) or None (N) when ``capped``."""

    value: int | None
    status: str
    outcomes: list[SearchOutcome] = field(default_factory=list)

    @property
    def witness(self) -> PermTable | None:
        found = [o for o in self.outcomes if o.found]
        return found[-1].witness if found else None


def scn_exact(t: int, N: int, v_cap: int, budget: SearchBudget | None = None, **kw) -> ExactResult:
    """Largest v <= v_cap for which an (N, v, t)-suitable core exists.

    Relies on nonexistence at v implying nonexistence at v+1 (deleting a
    symbol from a core leaves a core).
    """
    if v_cap < 0:
        raise PreconditionError("v_cap must be >= 0")
    outcomes = []
    for v in range(1, v_cap + 1):
        out = exists_core(N, v, t, budget, **kw)
        outcomes.append(out)
        if out.status == ABORTED:
            return ExactResult(None, ABORTED_RESULT, outcomes)
        if out.exhausted:
            return ExactResult(v - 1, EXACT_STATUS, outcomes)
    return ExactResult(v_cap, CAPPED, outcomes)


def n_exact(v: int, t: int, n_cap: int | None = None, budget: SearchBudget | None = None, **kw) -> ExactResult:
    """Fewest rows N <= n_cap of a (N, v, t)-suitable array, found through cores.

    For t <= N <= v, an (N, v, t)-array exists exactly when an (N, v-N, t)-core
    does; N = v always works.
    """
    if not 1 <= t <= v:
        raise PreconditionError(f"need 1 <= t <= v, got v={v}, t={t}")
    n_cap = v if n_cap is None else min(n_cap, v)
    outcomes = []
    for N in range(t, n_cap + 1):
        out = exists_core(N, v - N, t, budget, **kw)
        outcomes.append(out)
        if out.status == ABORTED:
            return ExactResult(None, ABORTED_RESULT, outcomes)
        if out.found:
            return ExactResult(N, EXACT_STATUS, outcomes)
    return ExactResult(None, CAPPED, outcomes)
