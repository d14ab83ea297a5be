#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
geproci 半网格精确计算工具 - 核心包
"""

from halfgrids.core.construct import assemble_pair, construct, run_all_mu
from halfgrids.core.geproci import is_geproci, verify_certificate
from halfgrids.core.halfgrid import detect_structure, f4_root_model, standard_grid, standard_halfgrid
from halfgrids.core.perms import admissible_sigma_sets

__version__ = "1.0.0"
