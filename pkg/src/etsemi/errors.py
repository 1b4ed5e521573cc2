"""Exception types shared across the package."""

from __future__ import annotations


class CapExceeded(RuntimeError):
    """An exhaustive scan was refused because the group is larger than the cap.

    Callers treat this as *inconclusive*, never as a negative answer.
    """

    def __init__(self, order: int, cap: int):
        super().__init__(f"group order {order} exceeds enumeration cap {cap}")
        self.order = order
        self.cap = cap


class HypothesisError(ValueError):
    """The input does not satisfy the hypotheses of the requested check."""


class NotInvariantError(ValueError):
    """A subset is not mapped to itself by the permutation."""


class TrivialOnSubsetError(ValueError):
    """The permutation acts as the identity on the subset under test."""


class NormalityError(ValueError):
    """A supplied subgroup is not contained in, or not normal in, the ambient group."""


class Violation(AssertionError):
    """A theorem, lemma or corollary failed on a concrete input.

    Raised only when the hypotheses were verified and an exhaustive search
    came back empty, so it always indicates a bug (or a counterexample).
    """

    def __init__(self, result: str, detail: str):
        super().__init__(f"{result} violated: {detail}")
        self.result = result
        self.detail = detail
