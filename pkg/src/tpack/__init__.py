"""Edge-disjoint T-path packing with verifiable cut certificates."""

__version__ = "0.1.0"
