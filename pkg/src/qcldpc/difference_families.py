"""Skolem sequences, hooked Skolem sequences and (v, k, 1) difference families.

A ``(6t+1, 3, 1)`` cyclic difference family is obtained from any Skolem-type
pairing ``(u_i, v_i)`` by the blocks ``{0, i, v_i + t}``.  Hooked pairings
(``t = 2, 3 mod 4``) give a CDF, ordinary Skolem pairings (``t = 0, 1 mod 4``)
give a perfect difference family.  Families with ``k = 4`` are found by an
exact-cover search.
"""
from __future__ import annotations

import enum
import itertools
import os
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from qcldpc import kernels
from qcldpc.errors import NonexistentError, ParameterError, ParseError, SearchBudgetExceeded

DEFAULT_SEARCH_BUDGET = 50_000_000
DEFAULT_RESTART_NODES = 20_000


@dataclass(frozen=True)
class SkolemPairing:
    """Pairs ``pairs[i-1] = (u_i, v_i)`` with ``v_i - u_i = i``."""

    order: int
    pairs: tuple
    hooked: bool = False

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((int(u), int(v)) for u, v in self.pairs))

    def check(self):
        """Raise ``ValueError`` unless every invariant of the pairing holds."""
        t = self.order
        if t < 1 or len(self.pairs) != t:
            raise ValueError(f"expected {t} pairs, got {len(self.pairs)}")
        for i, (u, v) in enumerate(self.pairs, start=1):
            if v - u != i:
                raise ValueError(f"pair {i} = ({u}, {v}) has difference {v - u}")
        values = sorted(x for pair in self.pairs for x in pair)
        if self.hooked:
            expected = list(range(1, 2 * t)) + [2 * t + 1]
        else:
            expected = list(range(1, 2 * t + 1))
        if values != expected:
            raise ValueError("pair entries do not partition the required position set")

    def is_valid(self):
        try:
            self.check()
        except ValueError:
            return False
        return True

    def sequence(self):
        """The sequence form ``a_1, a_2, ...``; a hook shows up as a 0."""
        length = 2 * self.order + (1 if self.hooked else 0)
        seq = [0] * length
        for i, (u, v) in enumerate(self.pairs, start=1):
            seq[u - 1] = i
            seq[v - 1] = i
        return seq


@dataclass(frozen=True)
class DifferenceSpectrum:
    forward: tuple
    backward: tuple

    def counts(self):
        return Counter(self.forward) + Counter(self.backward)


@dataclass(frozen=True)
class DifferenceFamily:
    v: int
    k: int
    blocks: tuple
    lam: int = 1
    provenance: str = field(default="", compare=False)

    def __post_init__(self):
        blocks = tuple(tuple(int(x) for x in b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if self.k < 2:
            raise ValueError("block size must be at least 2")
        if self.lam != 1:
            raise ValueError("only lambda = 1 families are supported")
        if self.v != self.k * (self.k - 1) * len(blocks) + 1:
            raise ValueError(f"v = {self.v} but k(k-1)t + 1 = {self.k * (self.k - 1) * len(blocks) + 1}")
        for b in blocks:
            if len(b) != self.k:
                raise ValueError(f"block {b} does not have {self.k} elements")
            if any(x < 0 or x >= self.v for x in b):
                raise ValueError(f"block {b} has residues outside Z_{self.v}")
            if any(b[j] >= b[j + 1] for j in range(len(b) - 1)):
                raise ValueError(f"block {b} is not strictly increasing")

    @property
    def t(self):
        return len(self.blocks)

    def spectrum(self):
        v = self.v
        backward = []
        for b in self.blocks:
            for lo, hi in itertools.combinations(b, 2):
                backward.append((hi - lo) % v)
        forward = tuple((v - d) % v for d in backward)
        return DifferenceSpectrum(forward=forward, backward=tuple(backward))

    def to_text(self):
        lines = [f"{self.v} {self.k} {self.t}"]
        lines += [" ".join(str(x) for x in b) for b in self.blocks]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        rows = text.splitlines()
        if not rows:
            raise ParseError("empty file", line=1)
        try:
            v, k, t = (int(x) for x in rows[0].split())
        except ValueError:
            raise ParseError("header must be 'v k t'", line=1) from None
        if len(rows) < t + 1:
            raise ParseError(f"expected {t} block lines, found {len(rows) - 1}", line=len(rows) + 1)
        blocks = []
        for lineno in range(2, t + 2):
            try:
                block = [int(x) for x in rows[lineno - 1].split()]
            except ValueError:
                raise ParseError("non-integer residue", line=lineno) from None
            if len(block) != k:
                raise ParseError(f"expected {k} residues", line=lineno)
            blocks.append(block)
        if any(r.strip() for r in rows[t + 1:]):
            raise ParseError("trailing content", line=t + 2)
        try:
            return cls(v=v, k=k, blocks=tuple(blocks))
        except ValueError as exc:
            raise ParseError(str(exc), line=2) from None


class Classification(str, enum.Enum):
    NOT_CDF = "not-a-CDF"
    CDF = "CDF"
    PDF = "PDF"


def classify(df):
    """Return ``(Classification, DifferenceSpectrum)`` for ``df``."""
    spec = df.spectrum()
    counts = spec.counts()
    if any(counts.get(d, 0) != df.lam for d in range(1, df.v)) or counts.get(0, 0):
        return Classification.NOT_CDF, spec
    half = (df.v - 1) // 2
    if sorted(spec.backward) == list(range(1, half + 1)):
        return Classification.PDF, spec
    return Classification.CDF, spec


# ---------------------------------------------------------------------------
# Skolem-type pairings
# ---------------------------------------------------------------------------

def _index_by_difference(t, pairs, hooked):
    by_diff = sorted(pairs, key=lambda p: p[1] - p[0])
    return SkolemPairing(order=t, pairs=tuple(by_diff), hooked=hooked)


def hooked_skolem(t):
    """Explicit hooked Skolem sequence of order ``t`` (``t = 2, 3 mod 4``)."""
    if t < 2 or t % 4 not in (2, 3):
        raise NonexistentError(f"hooked Skolem sequences of order {t} do not exist (need t = 2 or 3 mod 4)")
    if t == 2:
        pairs = [(1, 2), (3, 5)]
    elif t == 3:
        pairs = [(1, 4), (2, 3), (5, 7)]
    elif t % 4 == 2:
        s = (t - 2) // 4
        pairs = [(r, 4 * s - r + 2) for r in range(1, 2 * s + 1)]
        pairs += [(4 * s + r + 3, 8 * s - r + 4) for r in range(1, s)]
        pairs += [(5 * s + r + 2, 7 * s - r + 3) for r in range(1, s)]
        pairs += [(2 * s + 1, 6 * s + 2), (4 * s + 2, 6 * s + 3), (4 * s + 3, 8 * s + 5), (7 * s + 3, 7 * s + 4)]
    else:
        s = (t + 1) // 4
        pairs = [(4 * s + r, 8 * s - r - 2) for r in range(1, 2 * s - 1)]
        pairs += [(r, 4 * s - r - 1) for r in range(1, s - 1)]
        pairs += [(s + r + 1, 3 * s - r) for r in range(1, s - 1)]
        pairs += [(s - 1, 3 * s), (s, s + 1), (2 * s, 4 * s - 1), (2 * s + 1, 6 * s - 1), (4 * s, 8 * s - 1)]
    p = _index_by_difference(t, pairs, hooked=True)
    p.check()
    return p


def _skolem_backtrack(t):
    # Fill positions left to right, trying numbers in increasing order; the
    # first completion is the lexicographically smallest sequence.
    seq = [0] * (2 * t + 1)
    used = [False] * (t + 1)

    def place(pos):
        while pos <= 2 * t and seq[pos]:
            pos += 1
        if pos > 2 * t:
            return True
        for i in range(1, t + 1):
            if used[i] or pos + i > 2 * t or seq[pos + i]:
                continue
            seq[pos] = seq[pos + i] = i
            used[i] = True
            if place(pos + 1):
                return True
            seq[pos] = seq[pos + i] = 0
            used[i] = False
        return False

    if not place(1):
        return None
    first = {}
    for pos in range(1, 2 * t + 1):
        first.setdefault(seq[pos], pos)
    return [(first[i], first[i] + i) for i in range(1, t + 1)]


def skolem(t):
    """A Skolem sequence of order ``t`` (``t = 0, 1 mod 4``).

    Orders 1, 4 and 5 come from the lexicographically smallest sequence found
    by backtracking.  From ``t = 8`` on the classical direct construction is
    used (with ``t = 4s`` or ``t = 4s + 1``, ``s >= 2``).
    """
    if t < 1 or t % 4 not in (0, 1):
        raise NonexistentError(f"Skolem sequences of order {t} do not exist (need t = 0 or 1 mod 4)")
    if t < 8:
        pairs = _skolem_backtrack(t)
    elif t % 4 == 0:
        s = t // 4
        pairs = [(4 * s + r - 1, 8 * s - r + 1) for r in range(1, 2 * s + 1)]
        pairs += [(r, 4 * s - r - 1) for r in range(1, s - 1)]
        pairs += [(s + r + 1, 3 * s - r) for r in range(1, s - 1)]
        pairs += [(s - 1, 3 * s), (s, s + 1), (2 * s, 4 * s - 1), (2 * s + 1, 6 * s)]
    else:
        s = (t - 1) // 4
        pairs = [(4 * s + r + 1, 8 * s - r + 3) for r in range(1, 2 * s + 1)]
        pairs += [(r, 4 * s - r + 1) for r in range(1, s)]
        pairs += [(s + r + 2, 3 * s - r + 1) for r in range(1, s - 1)]
        pairs += [(s, 3 * s + 1), (s + 1, s + 2), (2 * s + 1, 6 * s + 2), (2 * s + 2, 4 * s + 1)]
    p = _index_by_difference(t, pairs, hooked=False)
    p.check()
    return p


def cdf_from_pairing(p):
    """Blocks ``{0, i, v_i + t}`` over ``Z_{6t+1}``."""
    p.check()
    t = p.order
    blocks = tuple((0, i, v + t) for i, (_, v) in enumerate(p.pairs, start=1))
    kind = "hooked-skolem" if p.hooked else "skolem"
    return DifferenceFamily(v=6 * t + 1, k=3, blocks=blocks, provenance=f"{kind}(t={t})")


# ---------------------------------------------------------------------------
# Perfect difference family search
# ---------------------------------------------------------------------------

def search_budget():
    """Node budget for :func:`pdf_search`; ``QCLDPC_SEARCH_BUDGET`` overrides it."""
    raw = os.environ.get("QCLDPC_SEARCH_BUDGET")
    if raw is None:
        return DEFAULT_SEARCH_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ParameterError(f"QCLDPC_SEARCH_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise ParameterError("QCLDPC_SEARCH_BUDGET must be positive")
    return value


def ruler_options(k, t):
    """All candidate blocks for a perfect family, as (blocks, difference rows).

    A block ``{0, x_1, ..., x_{k-1}}`` is a candidate when its differences
    are distinct and at most ``k(k-1)t/2``.  A block and its mirror image
    ``{0, c - x_{k-2}, ..., c}`` cover the same differences, so only the
    orientation with the shorter first gap is kept.
    """
    top = k * (k - 1) * t // 2
    blocks, rows = [], []
    for gaps in _gap_sequences(k - 1, top):
        if gaps[0] >= gaps[-1] and k > 2:
            continue
        marks = [0]
        for g in gaps:
            marks.append(marks[-1] + g)
        diffs = [b - a for a, b in itertools.combinations(marks, 2)]
        if len(set(diffs)) != len(diffs):
            continue
        blocks.append(tuple(marks))
        rows.append(sorted(diffs))
    rows = np.asarray(rows, dtype=np.int64).reshape(len(rows), k * (k - 1) // 2) - 1
    return blocks, rows


def _gap_sequences(n, total):
    if n == 1:
        for g in range(1, total + 1):
            yield (g,)
        return
    for g in range(1, total - n + 2):
        for rest in _gap_sequences(n - 1, total - g):
            yield (g,) + rest


def _check_pdf_domain(k, t):
    if k >= 6:
        raise NonexistentError(f"no ({k * (k - 1) * t + 1},{k},1) perfect difference family exists for k >= 6")
    if k == 5:
        raise ParameterError("k = 5 perfect difference families are not supported")
    if k not in (3, 4):
        raise ParameterError(f"block size must be 3 or 4, got {k}")
    if t < 1:
        raise ParameterError("the number of blocks must be positive")
    if k == 3 and t % 4 not in (0, 1):
        raise NonexistentError(f"a ({6 * t + 1},3,1) perfect difference family exists only for t = 0 or 1 mod 4")
    if k == 4 and t in (2, 3):
        raise NonexistentError(f"no ({12 * t + 1},4,1) perfect difference family exists for t = {t}")


def pdf_search(k, t, budget=None, restart_nodes=DEFAULT_RESTART_NODES, seed=0, check_domain=True):
    """Find a ``(k(k-1)t+1, k, 1)`` perfect difference family by exact cover.

    The differences ``1 .. k(k-1)t/2`` are covered exactly once by candidate
    blocks (see :func:`ruler_options`) with Knuth's dancing links, choosing
    the column with fewest candidates.  The first attempt takes candidates
    in lexicographic order; later attempts shuffle them with a generator
    seeded by ``seed`` and get a node allowance that doubles every 16
    restarts.  The whole procedure is deterministic for fixed arguments.

    Raises :class:`SearchBudgetExceeded` when ``budget`` nodes are spent
    without an answer, and :class:`NonexistentError` when the parameters are
    outside the existence range or an attempt exhausts the search tree.
    """
    if check_domain:
        _check_pdf_domain(k, t)
    if budget is None:
        budget = search_budget()
    v = k * (k - 1) * t + 1
    ncols = (v - 1) // 2
    blocks, rows = ruler_options(k, t)
    rng = np.random.default_rng(seed)
    spent = 0
    attempt = 0
    while spent < budget:
        if attempt == 0:
            order = np.arange(len(rows))
        else:
            order = rng.permutation(len(rows))
        allowance = min(restart_nodes * 2 ** (attempt // 16), budget - spent)
        status, sol, nodes = kernels.dlx_solve(ncols, np.ascontiguousarray(rows[order]), allowance)
        spent += nodes
        if status == 1:
            chosen = sorted(blocks[order[i]] for i in sol)
            return DifferenceFamily(
                v=v, k=k, blocks=tuple(chosen),
                provenance=f"pdf_search(k={k}, t={t}, seed={seed}, attempt={attempt}, nodes={spent})",
            )
        if status == 0:
            raise NonexistentError(f"exhaustive search: no ({v},{k},1) perfect difference family exists")
        attempt += 1
    raise SearchBudgetExceeded(
        f"no ({v},{k},1) perfect difference family found within {budget} search nodes "
        f"(one is known to exist; raise QCLDPC_SEARCH_BUDGET)",
        nodes=spent,
    )


def perfect_family(k, t, budget=None):
    """A perfect family by the cheapest available route."""
    if k == 3:
        _check_pdf_domain(3, t)
        return cdf_from_pairing(skolem(t))
    return pdf_search(k, t, budget=budget)
