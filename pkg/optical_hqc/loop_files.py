"""Loop-description files

A loop file is a JSON document:

    {
      "model": "two_qubit",
      "segments": [
        {"kind": "arc", "center": {}, "radius": 0.2,
         "plane": ["alpha1_re", "alpha1_im"]}
      ]
    }

Line segments carry "start" and "end", arcs carry "center", "radius",
"plane" and optional "theta_start"/"theta_end" (radians, full turn by
default). Omitted coordinates are 0.
"""

import json
import logging
from pathlib import Path
from typing import Dict, Union

import numpy as np
from pydantic import ValidationError

from optical_hqc.engine.holonomy_engine import (ArcSegment, LineSegment,
                                                LoopPath)
from optical_hqc.engine.optics_ops import ModelSpec
from optical_hqc.models import (ArcSegmentModel, LineSegmentModel,
                                LoopFileModel)
from optical_hqc.utils.exceptions import LoopFormatError, ModelMismatchError

logger = logging.getLogger(__name__)


def read_loop_document(path: Union[str, Path]) -> LoopFileModel:
    """
    Read and schema-check a loop file

    Raises:
        LoopFormatError: If the file is missing, is not JSON (line and column
            are reported) or does not follow the schema
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise LoopFormatError(f"Cannot read loop file {path}: {e}")

    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise LoopFormatError(
            f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}"
        )

    try:
        return LoopFileModel.model_validate(raw)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
        )
        raise LoopFormatError(f"{path}: {problems}")


def _coords(spec: ModelSpec, values: Dict[str, float]) -> np.ndarray:
    return spec.point(values).coords


def build_loop(document: LoopFileModel, spec: ModelSpec) -> LoopPath:
    """
    Turn a loop document into a LoopPath of the job's model

    Raises:
        ModelMismatchError: If the document names another model
        UnknownCoordinateError: If a coordinate name is not in the model
        LoopClosureError: If segments do not join
    """
    qubits = document.qubits if document.qubits is not None else spec.n_qubits
    if document.model != spec.kind or qubits != spec.n_qubits:
        raise ModelMismatchError(
            f"Loop file is for {document.model.value}({qubits}), job model is {spec.label}"
        )

    segments = []
    for item in document.segments:
        if isinstance(item, LineSegmentModel):
            segments.append(LineSegment(_coords(spec, item.start), _coords(spec, item.end)))
        else:
            plane = (spec.coordinate_index(item.plane[0]), spec.coordinate_index(item.plane[1]))
            segments.append(
                ArcSegment(
                    _coords(spec, item.center),
                    item.radius,
                    plane,
                    item.theta_start,
                    item.theta_end,
                )
            )
    return LoopPath(spec.kind, spec.n_qubits, tuple(segments))


def parse_loop_file(path: Union[str, Path], spec: ModelSpec) -> LoopPath:
    """
    Read a loop file and return the closed loop it describes

    Args:
        path: Loop file path
        spec: Model of the job the loop is used in

    Returns:
        Validated closed LoopPath

    Raises:
        LoopFormatError: Unreadable file, bad JSON or schema violation
        UnknownCoordinateError: Coordinate name not in the model
        LoopClosureError: Segments do not join or the loop is open
    """
    loop = build_loop(read_loop_document(path), spec)
    loop.require_closed()
    logger.info(f"Loaded loop with {len(loop.segments)} segment(s) from {path}")
    return loop


def _named(spec: ModelSpec, coords: np.ndarray) -> Dict[str, float]:
    return {
        name: float(value)
        for name, value in zip(spec.coordinate_names, coords)
        if value != 0
    }


def describe_loop(loop: LoopPath, spec: ModelSpec) -> LoopFileModel:
    """Loop document of a LoopPath (inverse of build_loop)"""
    loop.check_model(spec)
    names = spec.coordinate_names
    segments = []
    for segment in loop.segments:
        if isinstance(segment, LineSegment):
            segments.append(
                LineSegmentModel(
                    kind="line",
                    start=_named(spec, segment.start),
                    end=_named(spec, segment.end),
                )
            )
        else:
            segments.append(
                ArcSegmentModel(
                    kind="arc",
                    center=_named(spec, segment.center),
                    radius=segment.radius,
                    plane=(names[segment.plane[0]], names[segment.plane[1]]),
                    theta_start=segment.theta_start,
                    theta_end=segment.theta_end,
                )
            )
    return LoopFileModel(model=spec.kind, qubits=spec.n_qubits, segments=segments)
