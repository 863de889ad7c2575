"""
Sample CSV (one column per domain coordinate plus re, im) and coefficient
JSON ({"family", "alpha", "entries": [{"index", "re", "im"}]}) files.
"""
import json
from pathlib import Path
from typing import Optional, Tuple

import numpy as np
import pandas as pd

from algebra.coeffs import CoeffVec
from basis.indices import FamilyId, Window


def _read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise OSError(f"cannot read {path}: {e.strerror or e}") from e


def _write_text(path, text: str):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as e:
        raise OSError(f"cannot write {path}: {e.strerror or e}") from e


def read_samples(path, family: FamilyId) -> Tuple[Tuple[np.ndarray, ...], np.ndarray]:
    """
    Coordinates in the family's domain order and complex values.
    """
    domain = family.basis.domain
    try:
        df = pd.read_csv(path)
    except OSError as e:
        raise OSError(f"cannot read {path}: {e.strerror or e}") from e
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise ValueError(f"malformed sample file {path}: {e}") from e
    missing = [c for c in domain if c not in df.columns]
    if missing:
        raise ValueError(
            f"sample file {path} lacks coordinate column(s) {', '.join(missing)} "
            f"of {family} ({', '.join(domain)})"
        )
    coords = tuple(df[c].to_numpy(dtype=float) for c in domain)
    re = df["re"].to_numpy(dtype=float) if "re" in df else np.zeros(len(df))
    im = df["im"].to_numpy(dtype=float) if "im" in df else np.zeros(len(df))
    return coords, re + 1j * im


def samples_frame(family: FamilyId, coords, values) -> pd.DataFrame:
    values = np.asarray(values, dtype=complex)
    columns = {name: np.asarray(c, dtype=float) for name, c in zip(family.basis.domain, coords)}
    columns["re"] = values.real
    columns["im"] = values.imag
    return pd.DataFrame(columns)


def write_samples(path: Optional[str], family: FamilyId, coords, values) -> str:
    text = samples_frame(family, coords, values).to_csv(
        index=False, float_format="%.15e", lineterminator="\n"
    )
    if path is None:
        print(text, end="")
    else:
        _write_text(path, text)
    return text


def coeffs_to_dict(v: CoeffVec) -> dict:
    return {
        "family": v.family.tag,
        "alpha": v.family.alpha,
        "entries": [
            {"index": list(comp), "re": amplitude.real, "im": amplitude.imag}
            for comp, amplitude in v.entries().items()
        ],
    }


def write_coeffs(path: Optional[str], v: CoeffVec) -> str:
    text = json.dumps(coeffs_to_dict(v), sort_keys=True, indent=2) + "\n"
    if path is None:
        print(text, end="")
    else:
        _write_text(path, text)
    return text


def read_coeffs(path, device="cpu", float_precision=64) -> CoeffVec:
    """
    Coefficient vector on the smallest full window holding every entry.
    Indices are given doubled where the family stores them doubled.
    """
    try:
        document = json.loads(_read_text(path))
        family = FamilyId.parse(document["family"], document.get("alpha"))
        entries = {
            tuple(int(c) for c in entry["index"]): complex(
                float(entry.get("re", 0.0)), float(entry.get("im", 0.0))
            )
            for entry in document["entries"]
        }
    except json.JSONDecodeError as e:
        raise ValueError(f"malformed coefficient file {path}: {e}") from e
    except (KeyError, TypeError) as e:
        raise ValueError(f"malformed coefficient file {path}: missing or invalid {e}") from e
    basis = family.basis
    for comp in entries:
        basis.validate(comp)
    max_degree = max((basis.degree(comp) for comp in entries), default=0)
    window = Window(family, max_degree)
    return CoeffVec(window, entries, device=device, float_precision=float_precision)
