#!/usr/bin/env python3
# MIT License
#
# Copyright (c) 2025 The dynpdr authors
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
#
#

"""
Configuration: packaged YAML defaults, deep-merged with an optional user YAML file,
with the solver seed overridable from the environment.
"""
import os
import importlib.resources as pkg_resources
from typing import Any, Dict, Optional

import yaml

from dynpdr import data
from dynpdr.ic3.strategy import StrategyConfig, StrategyKind, LiteralOrder
from dynpdr.pluggable import PluggableRegistry, PluggableType
from dynpdr.sat.pysat_solver import known_backend

DEFAULT_CONFIG_YAML = 'default_config.yaml'
SEED_ENV = 'DYNPDR_SEED'


def deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """
    Copy of base with override applied key by key, recursing into sections
    """
    ret = dict(base)
    for k, v in override.items():
        if isinstance(v, dict) and isinstance(ret.get(k), dict):
            ret[k] = deep_merge(ret[k], v)
        else:
            ret[k] = v
    return ret


def load_config(file_name: Optional[str] = None) -> Dict[str, Any]:
    """
    Defaults, then the user file, then the seed environment variable
    :param file_name: optional user YAML file
    :return: configuration dictionary
    """
    config = yaml.safe_load(pkg_resources.files(data).joinpath(DEFAULT_CONFIG_YAML).read_text())
    if file_name is not None:
        try:
            with open(file_name, 'r') as f:
                user = yaml.safe_load(f)
        except (IOError, yaml.YAMLError) as e:
            raise ConfigException(f'Unable to load config file {file_name}: {e}')
        if user is not None:
            if not isinstance(user, dict):
                raise ConfigException(f'Config file {file_name} must contain a mapping')
            config = deep_merge(config, user)
    seed = os.environ.get(SEED_ENV)
    if seed is not None:
        try:
            config['solver']['seed'] = int(seed)
        except ValueError:
            raise ConfigException(f'{SEED_ENV} must be an integer, got {seed}')
    return config


def strategy_from_config(section: Dict[str, Any]) -> StrategyConfig:
    """
    Build a StrategyConfig from the 'strategy' section
    """
    kind = StrategyKind.from_string(str(section['kind']))
    if kind is None:
        raise ConfigException(f'Unknown strategy {section["kind"]}, expected one of '
                              f'{[k.name.lower() for k in StrategyKind]}')
    order = LiteralOrder.from_string(str(section.get('literal_order', 'ascending')))
    if order is None:
        raise ConfigException(f'Unknown literal order {section["literal_order"]}')
    return StrategyConfig(kind=kind, ctg_lv=section['ctg_lv'], ctg_max=section['ctg_max'],
                          exctg_limit=section['exctg_limit'], ctg_th=section['ctg_th'],
                          exctg_th=section['exctg_th'], literal_order=order,
                          unified=bool(section.get('unified', False)))


def backend_from_config(section: Dict[str, Any]) -> str:
    """
    Solver name from the 'solver' section. Any name goes when a SatBackend pluggable is registered,
    otherwise python-sat must know it.
    """
    name = str(section['backend'])
    if not known_backend(name) and not PluggableRegistry().pluggable_registered(t=PluggableType.SatBackend):
        raise ConfigException(f'Unknown SAT backend {name}')
    return name


class ConfigException(Exception):

    def __init__(self, msg: str):
        super().__init__(f"ConfigException: {msg}")
