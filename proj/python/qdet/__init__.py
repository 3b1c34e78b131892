# Copyright 2026 The qdet Authors
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

"""Quantum optical detectors as POVMs on truncated Fock spaces.

POVMs cross the Python boundary as lists of ``(label, matrix)`` pairs on a
single mode; the photon-number cutoff is implied by the matrix dimension.
Helper detectors (:func:`click_detector`, :func:`pnr_detector`) return
``(label, diagonal)`` pairs; promote them with ``numpy.diag`` before feeding
them to the dense operations.
"""

from ._qdet import (
    apply_loss,
    basis_occupations,
    click_detector,
    commutation_check,
    decompose,
    effective_povm,
    estimate_efficiency,
    invert_loss,
    lift,
    loss_kraus,
    pnr_detector,
    recompose,
    single_photon_block,
    validate_povm,
)

__all__ = [
    "apply_loss",
    "basis_occupations",
    "click_detector",
    "commutation_check",
    "decompose",
    "effective_povm",
    "estimate_efficiency",
    "invert_loss",
    "lift",
    "loss_kraus",
    "pnr_detector",
    "recompose",
    "single_photon_block",
    "validate_povm",
]
