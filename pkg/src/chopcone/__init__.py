"""Exact counting on chopped and sliced cones.

Lattice points in parametrised polytopes, their pushforward measures, the
reduction to vector partition functions, and the two representation
theoretic instances: weight multiplicities from string cones and tensor
product multiplicities from Berenstein-Zelevinsky trails.
"""
from .csc import (ChoppedSlicedCone, chop_count, convergence_report, measure, pairing,
                  scaled_measure, slice_count, validate)
from .errors import ChopconeError
from .liealg import CartanData, cartan
from .polyhedra import InequalitySystem, count_lattice_points, enumerate_lattice_points
from .vpf import QuasiPolynomial, VPFProblem, fit_quasipolynomial, phi, ray_scan, reduce_to_vpf

__version__ = "0.1.0"
