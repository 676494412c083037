# -*- encoding: utf-8 -*-
"""Analysis toolkit for suspended Josephson-junction arrays and fluxonium qubits."""
from __future__ import annotations
