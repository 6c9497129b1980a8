"""Holonomic quantum computation with Kerr-qubit optical models"""
