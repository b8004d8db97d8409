"""RSK combinatorics, crystals, commuting operator families, spectral flow
and Calogero-Moser cells of the symmetric group."""

__version__ = "0.1.0"
