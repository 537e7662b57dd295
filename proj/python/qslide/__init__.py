# Copyright 2026 The qslide Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Quantum-slide wave packets and widget gates."""

import json
import os
from pathlib import Path

from ._qslide import (
    ConfigError,
    NumericalError,
    amplitude_profile,
    chain_eigenvalues,
    chain_matrix,
    evolve_chain,
    gaussian_packet,
    gaussian_transmission,
    krawtchouk_eigenvalues,
    momentum_theta,
    p_of_a,
    period,
    resolve_config,
    time_for_momentum,
    transmission_b,
)
from . import _qslide


def widget_dir():
    """Directory holding the shipped .widget files."""
    env = os.environ.get("QSLIDE_DATA_DIR")
    if env:
        return Path(env) / "widgets"
    return Path(__file__).resolve().parent / "widgets"


def plane_wave(widget, k, incident_rail=0):
    """Scattering amplitudes of a widget ("ub", "uc", "bare" or a file path)."""
    path = Path(widget)
    if not path.suffix:
        path = widget_dir() / f"{widget}.widget"
    return _qslide.plane_wave(path, k, incident_rail)


def run_experiment(config):
    """Run an experiment from a dict or JSON string; returns (exit_code, message, files)."""
    if isinstance(config, str):
        config = json.loads(config)
    config = dict(config)
    config.setdefault("widget_dir", str(widget_dir()))
    return _qslide.run_experiment(json.dumps(config))


def run_gate(gate="ub", slide_len=200, a=-2.0, t_off_pi=0.226):
    """Prepare a packet on the slide and scatter it through a gate widget."""
    return _qslide.run_gate(gate, slide_len, a, t_off_pi, widget_dir())


__all__ = [
    "ConfigError",
    "NumericalError",
    "amplitude_profile",
    "chain_eigenvalues",
    "chain_matrix",
    "evolve_chain",
    "gaussian_packet",
    "gaussian_transmission",
    "krawtchouk_eigenvalues",
    "momentum_theta",
    "p_of_a",
    "period",
    "plane_wave",
    "resolve_config",
    "run_experiment",
    "run_gate",
    "time_for_momentum",
    "transmission_b",
    "widget_dir",
]
