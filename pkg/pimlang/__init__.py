"""Narrative biochemical models compiled to stochastic pi-calculus."""
