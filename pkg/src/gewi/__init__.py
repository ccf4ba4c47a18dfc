"""Entanglement-assisted classical link simulator."""
