"""Tensor helpers shared by the unitary oracle and the simulator"""

import numpy as np


def apply_matrix(tensor, matrix, axes):
    """Apply a 2^k x 2^k ``matrix`` to the qubit ``axes`` of a (2,)*n + batch tensor"""
    k = len(axes)
    op = matrix.reshape((2,) * (2 * k))
    moved = np.tensordot(op, tensor, axes=(list(range(k, 2 * k)), list(axes)))
    return np.moveaxis(moved, list(range(k)), list(axes))


def embed_unitary(gates, n_qubits, unitary_of):
    """Ordered product of gate unitaries on ``n_qubits`` qubits"""
    dim = 2 ** n_qubits
    tensor = np.eye(dim, dtype=complex).reshape((2,) * n_qubits + (dim,))
    for gate in gates:
        tensor = apply_matrix(tensor, unitary_of(gate), gate.qubits)
    return tensor.reshape(dim, dim)


def distance_up_to_global_phase(u, v):
    """max |U - lambda V| with the unit phase lambda aligning the largest entry of V"""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        return float('inf')
    idx = np.unravel_index(np.argmax(np.abs(v)), v.shape)
    ratio = u[idx] / v[idx] if abs(v[idx]) > 0 else 1.0
    phase = ratio / abs(ratio) if abs(ratio) > 0 else 1.0
    return float(np.max(np.abs(u - phase * v)))


def is_unitary(u, tol=1e-12):
    u = np.asarray(u, dtype=complex)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))) < tol


def permutation_unitary(layout, n_qubits):
    """Unitary moving the state of qubit i onto qubit ``layout[i]``"""
    dim = 2 ** n_qubits
    tensor = np.eye(dim, dtype=complex).reshape((2,) * n_qubits + (dim,))
    order = [0] * n_qubits
    for src, dst in enumerate(layout):
        order[dst] = src
    permuted = np.transpose(tensor, order + [n_qubits])
    return permuted.reshape(dim, dim)
