from .montecarlo import McEstimate, estimate, make_rng, sample_triple, sample_triples, spawn_rngs

__all__ = [
    "McEstimate",
    "make_rng",
    "spawn_rngs",
    "sample_triple",
    "sample_triples",
    "estimate",
]
