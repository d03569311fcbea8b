"""JSON encodings for states, channels and reports.

A complex matrix is a row-major nested list whose entries are ``[re, im]``
pairs. States are ``{"dim": N, "matrix": M}`` and channels are
``{"in_dim": N, "out_dim": M, "kraus": [M1, M2, ...]}``.
"""

import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .channels import KrausChannel, make_channel
from .errors import BadShape, InvalidState
from .states import DensityMatrix, as_matrix, make_density


def encode_matrix(m):
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def decode_matrix(data):
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise BadShape(f"matrix must be a nested list of [re, im] pairs, got array of shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def state_to_json(rho) -> dict:
    m = as_matrix(rho)
    return {"dim": int(m.shape[0]), "matrix": encode_matrix(m)}


def state_from_json(obj) -> DensityMatrix:
    """Decode and validate a state object; raises :class:`InvalidState`."""
    try:
        dim = int(obj["dim"])
        m = decode_matrix(obj["matrix"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidState("Malformed", message=f"Malformed state file: {exc}") from exc
    if m.shape != (dim, dim):
        raise InvalidState("NotSquare", message=f"NotSquare: declared dim {dim}, matrix shape {m.shape}")
    return make_density(m)


def channel_to_json(phi: KrausChannel) -> dict:
    return {"in_dim": phi.in_dim, "out_dim": phi.out_dim, "kraus": [encode_matrix(k) for k in phi.kraus]}


def channel_from_json(obj) -> KrausChannel:
    try:
        in_dim, out_dim = int(obj["in_dim"]), int(obj["out_dim"])
        kraus = [decode_matrix(k) for k in obj["kraus"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise BadShape(f"malformed channel file: {exc}") from exc
    for k in kraus:
        if k.shape != (out_dim, in_dim):
            raise BadShape(f"Kraus operator shape {k.shape} does not match ({out_dim}, {in_dim})")
    return make_channel(kraus)


def load_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load_state(path) -> DensityMatrix:
    return state_from_json(load_json(path))


def load_channel(path) -> KrausChannel:
    return channel_from_json(load_json(path))


def write_json_atomic(path, obj, **dump_kwargs):
    """Write JSON to a temp file in the target directory, then rename over ``path``."""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(obj, fh, **dump_kwargs)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_state(path, rho):
    write_json_atomic(path, state_to_json(rho))


def save_channel(path, phi):
    write_json_atomic(path, channel_to_json(phi))
