"""Chains, Jacobians and conditioning."""
