"""Data conversion utilities"""

from typing import List

import numpy as np


def matrix_to_pairs(matrix: np.ndarray) -> List[List[List[float]]]:
    """
    Convert a complex matrix to row-major [re, im] pairs

    Args:
        matrix: Complex 2-D array

    Returns:
        Nested list rows -> entries -> [re, im]
    """
    matrix = np.asarray(matrix, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in matrix]


def pairs_to_matrix(pairs: List[List[List[float]]]) -> np.ndarray:
    """Inverse of matrix_to_pairs"""
    array = np.asarray(pairs, dtype=float)
    return array[..., 0] + 1j * array[..., 1]


def unitarity_defect(gate: np.ndarray) -> float:
    """Frobenius norm of gate^dagger gate - 1"""
    gate = np.asarray(gate, dtype=complex)
    return float(np.linalg.norm(gate.conj().T @ gate - np.eye(gate.shape[0])))


def gate_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius distance between two gates"""
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def det_phase(gate: np.ndarray) -> float:
    """arg det(gate) in (-pi, pi]"""
    return float(np.angle(np.linalg.det(gate)))


def wrap_phase(phase: float) -> float:
    """Map a phase to [-pi, pi)"""
    return float((phase + np.pi) % (2 * np.pi) - np.pi)
