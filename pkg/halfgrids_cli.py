#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
geproci 半网格精确计算工具 - 命令行启动脚本
供 PyInstaller 打包使用，等价于 python -m halfgrids
"""

import sys

from halfgrids.__main__ import main

if __name__ == "__main__":
    sys.exit(main())
