import random
from pathlib import Path

from catpush.core import SpanData, full_subcategory, inclusion_functor, linear_order, validate_category

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def rng_from(seed: int) -> random.Random:
    return random.Random(seed)


def arrow():
    """[1] with objects a, b."""
    return validate_category(
        objects=["a", "b"],
        morphisms=[("f", "a", "b"), ("id_a", "a", "a"), ("id_b", "b", "b")],
        identities={"a": "id_a", "b": "id_b"},
        compose=[],
    )


def golden_span():
    C = linear_order(2)
    B, _ = full_subcategory(C, ["1", "2"])
    A, _ = full_subcategory(C, ["1"])
    return SpanData(inclusion_functor(A, B), inclusion_functor(A, C))

