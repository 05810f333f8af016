#!/usr/bin/python3

"""
reslab: central values of quadratic twists of Dirichlet L-functions, the
resonance method for finding large ones, and the experiments that check
the estimates behind it.
"""
__version__ = '1.0.0'
