"""Sparse sensor placement and gappy reconstruction.

Greedy QR-pivot sensor selection in data-driven (POD) or polynomial bases,
benchmarked against DEIM, random placement, exhaustive search and
compressed sensing in a universal DCT basis.
"""

__version__ = "0.1.0"
