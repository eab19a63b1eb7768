"""Conversions between the package representation and the reference one."""

import random

from vcube import Family, mask_elements


def to_ref(family):
    """Package Family -> set of frozensets of 1-indexed elements."""
    return {frozenset(mask_elements(m)) for m in family}


def ref_to_bits(ref_family):
    bits = 0
    for s in ref_family:
        m = 0
        for e in s:
            m |= 1 << (e - 1)
        bits |= 1 << m
    return bits


def random_family(rng: random.Random, n: int) -> Family:
    """Uniformly random nonempty family over P(n)."""
    while True:
        bits = rng.getrandbits(1 << n)
        if bits:
            return Family(n, bits)


def random_downset(rng: random.Random, n: int, generators: int = 3) -> Family:
    """Union of subset-closures of a few random masks (plus the empty set)."""
    from vcube import subcube_bits

    bits = 1
    for _ in range(generators):
        bits |= subcube_bits(rng.getrandbits(n), n)
    return Family(n, bits)
