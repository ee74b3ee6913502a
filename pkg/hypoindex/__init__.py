# __init__.py
"""
Index computations for second-order hypoelliptic operators on contact
3-manifolds: winding-number and Chern-character routes, Bargmann-Fock model
spectra, frame calculus and the Heisenberg nilmanifold oracle.
"""

__version__ = "0.1.0"
