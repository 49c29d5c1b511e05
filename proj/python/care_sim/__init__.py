# Copyright (c) 2026 The CARE Simulator Authors.
# Licensed under the Apache License, Version 2.0, see LICENSE for details.
# SPDX-License-Identifier: Apache-2.0
"""Python face of the secure-boot simulator.

The heavy lifting happens in the `_care` extension; these wrappers turn its
JSON text into plain dicts.
"""

import json

from . import _care
from ._care import CareError, hmac_sha256_hex, overhead_percent, sha256_hex

__version__ = _care.__version__

__all__ = [
    "CareError",
    "attack_gen",
    "build",
    "cost",
    "hmac_sha256_hex",
    "overhead_percent",
    "sha256_hex",
    "simulate",
    "verify",
]


def build(firmware, master_key, *, vendor_id=0, uuid=b"\x00" * 16,
          board_version=0, firmware_revision=0):
    """Build a signed image. Returns (image_bytes, manifest_bytes)."""
    return _care.build(firmware, master_key, vendor_id, uuid, board_version,
                       firmware_revision)


def verify(image, manifest, master_key):
    """Verify the per-frame chain of trust. Returns the chain report dict."""
    return json.loads(_care.verify(image, manifest, master_key))


def simulate(image, manifest, master_key, *, campaign=None, corrupt=(),
             seed=None, n_attacks=4, care=True, trigger="power_on", params=None):
    """Provision a device, apply attacks, boot it.

    Exactly one attack source may be given: a campaign dict (as produced by
    attack_gen), a list of frames to corrupt, or a seed for a generated
    campaign. Returns {"mutations": [...], "report": {...}}.
    """
    campaign_text = json.dumps(campaign) if campaign is not None else ""
    params_text = json.dumps(params) if params is not None else ""
    return json.loads(
        _care.simulate(image, manifest, master_key, campaign_text, list(corrupt),
                       seed, n_attacks, care, trigger, params_text))


def cost(n_frames, *, care=True, recovered=0, params=None):
    """Boot cost model. Returns the cost report dict."""
    params_text = json.dumps(params) if params is not None else ""
    return json.loads(_care.cost(n_frames, care, recovered, params_text))


def attack_gen(frame_count, seed, n_attacks=4):
    """Deterministic attack campaign. Returns the campaign dict."""
    return json.loads(_care.attack_gen(frame_count, seed, n_attacks))
