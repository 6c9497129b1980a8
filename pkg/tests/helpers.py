import json

import numpy as np


def random_point(spec, rng, scale=0.3):
    """Point whose complex parameters all have modulus <= scale"""
    values = rng.uniform(-1.0, 1.0, spec.n_coordinates) * scale / np.sqrt(2)
    return spec.point_from_coords(values)


def random_unitary(rng, m):
    z = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def write_json(path, document):
    path.write_text(json.dumps(document), encoding="utf-8")
    return path
