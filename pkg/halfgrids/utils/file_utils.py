#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
文件操作工具模块

点集配置、geproci 证书、运行清单与基准数据的 JSON 读写。
输出一律按键排序、缩进 2、以换行结尾，相同输入得到逐字节相同的文件。
"""

import hashlib
import json
import logging
import os
from typing import Dict, List, Optional

from halfgrids.core.errors import DegenerateInputError, InputFormatError
from halfgrids.core.exactalg import CycElem, parse_rational
from halfgrids.core.models import (
    ROLE_GRID, ROLE_TRANSVERSAL, Config, DeclaredLine, EquivCert, GeprociCert,
    ResultantWitness, RunManifest, TrialRecord
)
from halfgrids.core.projgeom import Plane3, ProjLine3, ProjPoint, line_through
from halfgrids.utils.constants import GOLDENS_FILE, MANIFEST_FILE

logger = logging.getLogger(__name__)

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'data')


def stable_json(data) -> str:
    """规范化的 JSON 文本"""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def sha256_hex(text: str) -> str:
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def sha256_file(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, 'rb') as f:
        for chunk in iter(lambda: f.read(65536), b''):
            digest.update(chunk)
    return digest.hexdigest()


def load_json(path: str):
    """读取 JSON 文件，失败时抛出 InputFormatError"""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise InputFormatError(f"JSON 格式错误 ({path}): {e}")
    except (IOError, UnicodeDecodeError) as e:
        raise InputFormatError(f"无法读取文件 ({path}): {e}")


def save_json(data, path: str) -> str:
    """写入 JSON 文件并返回内容的 sha256"""
    text = stable_json(data)
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(text)
    logger.debug(f"已写入 {path}")
    return sha256_hex(text)


# ---------------------------------------------------------------------------
# 点集配置
# ---------------------------------------------------------------------------

def config_to_dict(Z: Config) -> Dict:
    points = [{'label': label, 'coords': Z.point(label).to_json()} for label in Z.sorted_labels()]
    lines = []
    for d in Z.lines:
        entry = {'label': d.label, 'role': d.role, 'pluecker': d.line.to_json()}
        if d.members:
            entry['members'] = list(d.members)
        lines.append(entry)
    data = {'conductor': Z.conductor, 'points': points, 'lines': lines}
    if Z.flags:
        data['flags'] = list(Z.flags)
    return data


def _parse_line(entry: Dict, points: Dict[str, ProjPoint], conductor: int) -> DeclaredLine:
    label = entry['label']
    role = entry.get('role', ROLE_GRID)
    if role not in (ROLE_GRID, ROLE_TRANSVERSAL):
        raise InputFormatError(f"直线 {label} 的角色无效: {role!r}")
    members = tuple(entry.get('members', ()))
    if 'pluecker' in entry:
        line = ProjLine3.from_json(entry['pluecker'], conductor)
    elif 'through' in entry:
        first, second = entry['through']
        if first not in points or second not in points:
            raise InputFormatError(f"直线 {label} 引用了不存在的点")
        line = line_through(points[first], points[second])
    else:
        raise InputFormatError(f"直线 {label} 缺少 pluecker 或 through 字段")
    return DeclaredLine(label, line, role, members)


def config_from_dict(data: Dict) -> Config:
    """由 JSON 对象构造 Config

    Raises:
        InputFormatError: 字段缺失或取值无效
    """
    try:
        conductor = int(data.get('conductor', 1))
        points = {}
        for entry in data['points']:
            label = str(entry['label'])
            if label in points:
                raise InputFormatError(f"点标签重复: {label}")
            points[label] = ProjPoint.from_json(entry['coords'], conductor)
        lines = [_parse_line(entry, points, conductor) for entry in data.get('lines', [])]
        flags = tuple(data.get('flags', ()))
    except InputFormatError:
        raise
    except DegenerateInputError as e:
        raise InputFormatError(f"配置中的几何数据无效: {e}")
    except (KeyError, TypeError, ValueError) as e:
        raise InputFormatError(f"配置格式错误: {e}")
    return Config(conductor, points, lines, flags)


def load_config(path: str) -> Config:
    Z = config_from_dict(load_json(path))
    logger.info(f"已读取配置 {path}: {len(Z)} 个点，{len(Z.lines)} 条声明直线")
    return Z


def save_config(Z: Config, path: str) -> str:
    return save_json(config_to_dict(Z), path)


# ---------------------------------------------------------------------------
# geproci 证书
# ---------------------------------------------------------------------------

def _form_to_json(form) -> List:
    return [c.to_json() for c in form]


def certificate_to_dict(cert: GeprociCert) -> Dict:
    records = []
    for record in cert.records:
        records.append({
            'center': record.center.to_json(),
            'image_points': [p.to_json() for p in record.image_points],
            'f_a': _form_to_json(record.f_a),
            'f_b': _form_to_json(record.f_b),
            'witness': {
                'shear': record.witness.shear,
                'x0': record.witness.x0,
                'value': record.witness.value.to_json(),
            },
            'attempts': record.attempts,
        })
    return {
        'a': cert.a,
        'b': cert.b,
        'seed': cert.seed,
        'plane': [c.to_json() for c in cert.plane.coeffs],
        'certified': cert.certified,
        'records': records,
        'failures': list(cert.failures),
    }


def certificate_from_dict(data: Dict) -> GeprociCert:
    try:
        plane = Plane3([CycElem.from_json(c) for c in data['plane']])
        cert = GeprociCert(int(data['a']), int(data['b']), int(data['seed']), plane)
        for entry in data['records']:
            w = entry['witness']
            cert.records.append(TrialRecord(
                center=ProjPoint.from_json(entry['center']),
                image_points=[ProjPoint.from_json(p) for p in entry['image_points']],
                f_a=tuple(CycElem.from_json(c) for c in entry['f_a']),
                f_b=tuple(CycElem.from_json(c) for c in entry['f_b']),
                witness=ResultantWitness(int(w['shear']), int(w['x0']), CycElem.from_json(w['value'])),
                attempts=int(entry.get('attempts', 1)),
            ))
        cert.failures.extend(str(f) for f in data.get('failures', []))
    except InputFormatError:
        raise
    except (KeyError, TypeError, ValueError, DegenerateInputError) as e:
        raise InputFormatError(f"证书格式错误: {e}")
    return cert


def load_certificate(path: str) -> GeprociCert:
    return certificate_from_dict(load_json(path))


def save_certificate(cert: GeprociCert, path: str) -> str:
    return save_json(certificate_to_dict(cert), path)


def equivalence_to_dict(cert: Optional[EquivCert]) -> Dict:
    if cert is None:
        return {'equivalent': False}
    return {
        'equivalent': True,
        'matrix': [[c.to_json() for c in row] for row in cert.matrix],
        'point_map': dict(sorted(cert.point_map.items())),
    }


# ---------------------------------------------------------------------------
# 运行清单与基准数据
# ---------------------------------------------------------------------------

def write_manifest(manifest: RunManifest, emit_dir: str) -> str:
    """把清单写入输出目录，digests 需在调用前填好"""
    path = os.path.join(emit_dir, MANIFEST_FILE)
    save_json(manifest.to_dict(), path)
    print(f"运行清单已保存到 {path}")
    return path


def load_goldens(path: Optional[str] = None) -> Dict:
    """读取内置基准数据"""
    file_path = path or os.path.join(DATA_DIR, GOLDENS_FILE)
    data = load_json(file_path)
    if 'table3' not in data or 'construction' not in data:
        raise InputFormatError(f"基准数据不完整: {file_path}")
    return data


def rational_vector(values) -> List:
    """基准数据中的 "p/q" 列表转为有理数列表"""
    return [parse_rational(v) for v in values]
