#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""测试共用的夹具"""

import random

import pytest


@pytest.fixture
def rng():
    """固定种子的随机源，保证每次运行抽到相同的样本"""
    return random.Random(20240421)
