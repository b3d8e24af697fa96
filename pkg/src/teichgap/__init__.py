"""Explicit arithmetic Teichmüller curves with complementary series.

Modules:

* :mod:`teichgap.group_words` -- SL(2,Z), the free group PGamma_2 = <x, y>, m, m_2, memberships.
* :mod:`teichgap.origami` -- origamis, vertices, coverings, SL(2,Z) action, Veech orbits.
* :mod:`teichgap.constructions` -- E[2], X, Y(k), Z_k and the ramification criterion.
* :mod:`teichgap.spectral` -- Cheeger/Buser spectral-gap bounds and the Gamma_2(N) threshold.
* :mod:`teichgap.verify` -- claim-by-claim verification reports.
"""

__version__ = "0.1.0"
