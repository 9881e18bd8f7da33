"""askeykit: exact verification of raising-chain operational identities for the
orthogonal-polynomial families of the Askey scheme and its q-analogue.

All arithmetic is exact over the Gaussian rationals; every identity check
produces a symbolic residual that must vanish identically.
"""

__version__ = "0.1.0"
