"""Operator words, the tree basis b_v, and the kernel expansion partial sums.

Applying the word v = (i_0, ..., i_{L-1}) of composition operators to the
constant function 1 gives b_v(z) = prod_m e_{i_m}(R_m(z)).  Summing
b_v(z) conj(b_v(w)) over all words of exact length L factors exactly into
the first L kernel factors, which is the identity the tests pin down.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BudgetError
from .operators import CuntzRepresentation

#: Hard cap on the number of words any enumeration may produce.
WORD_BUDGET = 2**20


@dataclass(frozen=True)
class Word:
    """A finite sequence of symbol indices; the empty word denotes 1."""

    indices: tuple

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))
        if any(i < 0 for i in self.indices):
            raise ValueError("word indices must be nonnegative")

    def __len__(self) -> int:
        return len(self.indices)


def enumerate_words(count: int, length: int) -> list:
    """All count**length words of exact length, in lexicographic order."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if length < 0:
        raise ValueError("length must be >= 0")
    if count**length > WORD_BUDGET:
        raise BudgetError(f"{count}**{length} words exceed the budget of 2**20")
    return [Word(ix) for ix in itertools.product(range(count), repeat=length)]


def eval_word(rep: CuntzRepresentation, word: Word, z: complex) -> complex:
    """b_v(z) = prod_m e_{v_m}(R_m(z)); the empty word evaluates to 1."""
    value = 1 + 0j
    point = complex(z)
    for index in word.indices:
        value *= complex(rep.symbols.e(index)(point))
        point = rep.mapping.evaluate(point)
    return value


def _pairwise_sum(values: list) -> complex:
    """Deterministic pairwise tree reduction, independent of chunking."""
    if not values:
        return 0j
    while len(values) > 1:
        nxt = [values[i] + values[i + 1] for i in range(0, len(values) - 1, 2)]
        if len(values) % 2:
            nxt.append(values[-1])
        values = nxt
    return values[0]


def partial_expansion(rep: CuntzRepresentation, depth: int, z: complex, w: complex) -> complex:
    """sum over words v of exact length ``depth`` of b_v(z) conj(b_v(w))."""
    words = enumerate_words(rep.count, depth)
    terms = [eval_word(rep, v, z) * eval_word(rep, v, w).conjugate() for v in words]
    return _pairwise_sum(terms)
