#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
核心计算包
"""
