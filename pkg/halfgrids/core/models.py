#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
数据模型定义

点集配置、结构证书、等价证书、投影试验记录与运行清单。
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from halfgrids.core.errors import ConfigurationError, DegenerateInputError
from halfgrids.core.exactalg import CycElem, FieldContext, get_context
from halfgrids.core.projgeom import Plane3, ProjLine3, ProjPoint, on_line
from halfgrids.utils.format_utils import label_sort_key

logger = logging.getLogger(__name__)

ROLE_GRID = 'grid'  # 斜直线族中的直线
ROLE_TRANSVERSAL = 'transversal'


def grid_point_label(i: int, j: int, prefix: str = 'P') -> str:
    return f"{prefix}[{i}][{j}]"


@dataclass(frozen=True)
class DeclaredLine:
    """配置中声明的直线"""
    label: str
    line: ProjLine3
    role: str = ROLE_GRID
    members: Tuple[str, ...] = ()  # 声明属于该直线的点标签


class Config:
    """P^3 中带标签的有限点集，可附带声明的半网格直线与截线

    构造时校验: 点两两不同，声明直线包含其成员点。
    """

    def __init__(self, conductor: int, points: Dict[str, ProjPoint],
                 lines: Optional[List[DeclaredLine]] = None, flags: Tuple[str, ...] = ()):
        self.context: FieldContext = get_context(conductor)
        self.points: Dict[str, ProjPoint] = {
            label: p.embed(conductor) if p.conductor != conductor else p
            for label, p in points.items()
        }
        self.lines: List[DeclaredLine] = [
            DeclaredLine(d.label, d.line.embed(conductor) if d.line.conductor != conductor else d.line,
                         d.role, d.members)
            for d in (lines or [])
        ]
        self.flags = tuple(flags)
        self._index = None
        self.validate()

    @property
    def conductor(self) -> int:
        return self.context.conductor

    def validate(self):
        seen = {}
        for label, p in self.points.items():
            if p.dim != 3:
                raise DegenerateInputError(f"点 {label} 不在 P^3 中")
            if p in seen:
                raise ConfigurationError(f"点 {label} 与 {seen[p]} 重合")
            seen[p] = label
        for d in self.lines:
            for member in d.members:
                if member not in self.points:
                    raise ConfigurationError(f"直线 {d.label} 的成员 {member} 不存在")
                if not on_line(self.points[member], d.line):
                    raise ConfigurationError(f"点 {member} 不在直线 {d.label} 上")

    def __len__(self):
        return len(self.points)

    def labels(self) -> List[str]:
        return list(self.points)

    def sorted_labels(self) -> List[str]:
        return sorted(self.points, key=label_sort_key)

    def point(self, label: str) -> ProjPoint:
        return self.points[label]

    def index(self) -> Dict[ProjPoint, str]:
        """射影点到标签的映射"""
        if self._index is None:
            self._index = {p: label for label, p in self.points.items()}
        return self._index

    def label_of(self, p: ProjPoint) -> Optional[str]:
        return self.index().get(p)

    def line(self, label: str) -> ProjLine3:
        for d in self.lines:
            if d.label == label:
                return d.line
        raise KeyError(label)

    def grid_lines(self) -> List[DeclaredLine]:
        return [d for d in self.lines if d.role == ROLE_GRID]

    def transversals(self) -> List[DeclaredLine]:
        return [d for d in self.lines if d.role == ROLE_TRANSVERSAL]

    def points_on(self, line: ProjLine3) -> List[str]:
        return [label for label, p in self.points.items() if on_line(p, line)]

    def embed(self, conductor: int) -> "Config":
        return Config(conductor, self.points, self.lines, self.flags)

    def __repr__(self):
        return f"Config(N={self.conductor}, points={len(self.points)}, lines={len(self.lines)})"


@dataclass
class GridCert:
    """网格证书: 两族斜直线及其关联矩阵"""
    a_lines: List[ProjLine3]
    b_lines: List[ProjLine3]
    incidence: List[List[str]]  # incidence[r][c] 为 a_lines[r] 与 b_lines[c] 交点的标签


@dataclass
class HalfGridCert:
    """半网格证书: 存在的直线族，以及另一族不存在的穷举证据"""
    lines: List[ProjLine3]
    points_per_line: int
    missing_family_size: int  # 另一族所需的直线数
    missing_points_per_line: int
    candidate_lines: List[Tuple[ProjLine3, Tuple[str, ...]]]  # 恰含所需点数的全部直线
    max_skew_family: int  # 候选直线中最大两两异面子族的大小


@dataclass
class StructureReport:
    """结构检测结果: kind 取 Grid / HalfGrid / Neither"""
    kind: str
    a: int
    b: int
    grid: Optional[GridCert] = None
    half_grid: Optional[HalfGridCert] = None


@dataclass
class EquivCert:
    """射影等价证书"""
    matrix: List[List[CycElem]]
    point_map: Dict[str, str]


@dataclass
class PlanarConfig:
    """投影到平面后的点集（P^2 坐标）及其来源"""
    points: List[ProjPoint]
    labels: List[str] = field(default_factory=list)
    center: Optional[ProjPoint] = None
    plane: Optional[Plane3] = None


@dataclass
class ResultantWitness:
    shear: int  # x <- x + shear·z
    x0: int  # 特化点 (x, y) = (x0, 1)
    value: CycElem


@dataclass
class TrialRecord:
    """一次投影试验的完全交证书"""
    center: ProjPoint
    image_points: List[ProjPoint]
    f_a: Tuple[CycElem, ...]
    f_b: Tuple[CycElem, ...]
    witness: ResultantWitness
    attempts: int = 1


@dataclass
class GeprociCert:
    a: int
    b: int
    seed: int
    plane: Plane3
    records: List[TrialRecord] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return bool(self.records) and not self.failures


@dataclass
class RunManifest:
    """一次命令运行的清单"""
    command: str
    parameters: Dict
    seed: int
    conductor: Optional[int]
    version: str
    wall_time: float = 0.0
    digests: Dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {
            'command': self.command,
            'parameters': self.parameters,
            'seed': self.seed,
            'conductor': self.conductor,
            'version': self.version,
            'wall_time': round(self.wall_time, 3),
            'digests': dict(sorted(self.digests.items())),
        }
