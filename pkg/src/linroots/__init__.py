"""Roots of linearized polynomials over finite-field towers."""
