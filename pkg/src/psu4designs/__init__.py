"""Toolkit for flag-transitive point-primitive symmetric designs with socle PSU4(q).

Three legs:

* an exact-arithmetic feasibility sieve over the maximal-subgroup catalog of
  the almost simple groups with socle PSU4(q) (``exactmath``, ``catalog``,
  ``sieve``),
* constructive builders for the known designs on 36, 40 and 45 points,
  with symmetric-design verification and isomorphism testing (``geometry``,
  ``designs``),
* a small permutation-group engine for transitivity, primitivity, rank and
  flag-transitivity checks of induced reflection groups (``permgroup``).

The command line front end lives in ``psu4designs.cli``.
"""

__version__ = "0.1.0"
