"""Motivic statistics of configuration spaces, with a finite-field oracle.

Subpackages and modules:

* :mod:`motconf.series` truncated multivariate power series;
* :mod:`motconf.symfunc` symmetric functions and character polynomials;
* :mod:`motconf.prelambda` measure rings, sigma and Adams operations, rational motives;
* :mod:`motconf.motcalc` zeta functions, power structures, configuration classes, limits;
* :mod:`motconf.fforacle` brute-force counts over finite fields;
* :mod:`motconf.cli` the ``motconf`` command.
"""

__version__ = "0.1.0"
