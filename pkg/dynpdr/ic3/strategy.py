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
Generalization strategy selection and the parameter sets each strategy runs with.
"""
import enum
import math

from recordclass import recordclass


class StrategyKind(enum.Enum):
    Standard = enum.auto()
    Ctg = enum.auto()
    Exctg = enum.auto()
    Dynamic = enum.auto()

    def __repr__(self):
        return self.name

    def __str__(self):
        return self.name

    @classmethod
    def from_string(cls, s: str):
        for k in StrategyKind:
            if k.name.lower() == s.lower():
                return cls(k)
        return None


class LiteralOrder(enum.Enum):
    """
    Order in which literal dropping visits the literals of a cube
    """
    Ascending = enum.auto()
    Reverse = enum.auto()
    Activity = enum.auto()

    def __repr__(self):
        return self.name

    def __str__(self):
        return self.name

    @classmethod
    def from_string(cls, s: str):
        for o in LiteralOrder:
            if o.name.lower() == s.lower():
                return cls(o)
        return None


# parameters of one generalization call, branch names the adaptive branch taken
GeneralizeParams = recordclass('GeneralizeParams', ['branch', 'ctg_lv', 'ctg_max', 'exctg_limit'])

# shared by reference across one extended blocking recursion
ExctgBudget = recordclass('ExctgBudget', ['remaining'])


class StrategyConfig:
    """
    Strategy and its five parameters. When unified is set, Standard and CTG
    are run through the extended generalization with degenerate parameters
    (ctg_lv 0, resp. exctg_limit 1) instead of their own procedures.
    """
    DEFAULT_CTG_LV = 1
    DEFAULT_CTG_MAX = 3
    DEFAULT_EXCTG_LIMIT = 5
    DEFAULT_CTG_TH = 10
    DEFAULT_EXCTG_TH = 40

    def __init__(self, *, kind: StrategyKind = StrategyKind.Dynamic, ctg_lv: int = DEFAULT_CTG_LV,
                 ctg_max: int = DEFAULT_CTG_MAX, exctg_limit: int = DEFAULT_EXCTG_LIMIT,
                 ctg_th: int = DEFAULT_CTG_TH, exctg_th: int = DEFAULT_EXCTG_TH,
                 literal_order: LiteralOrder = LiteralOrder.Ascending, unified: bool = False):
        self.kind = kind
        self.ctg_lv = ctg_lv
        self.ctg_max = ctg_max
        self.exctg_limit = exctg_limit
        self.ctg_th = ctg_th
        self.exctg_th = exctg_th
        self.literal_order = literal_order
        self.unified = unified
        self.validate()

    def validate(self) -> None:
        if not isinstance(self.kind, StrategyKind):
            raise StrategyConfigException(f'Unknown strategy {self.kind}')
        for name in ['ctg_lv', 'ctg_max', 'exctg_limit', 'ctg_th', 'exctg_th']:
            if not isinstance(getattr(self, name), int):
                raise StrategyConfigException(f'{name} must be an integer')
        if self.ctg_lv < 0:
            raise StrategyConfigException(f'ctg_lv must be non-negative, got {self.ctg_lv}')
        if self.kind != StrategyKind.Standard and self.ctg_max < 1:
            raise StrategyConfigException(f'ctg_max must be at least 1 for {self.kind}, got {self.ctg_max}')
        if self.exctg_limit < 1:
            raise StrategyConfigException(f'exctg_limit must be at least 1, got {self.exctg_limit}')
        if self.kind == StrategyKind.Dynamic and self.ctg_th >= self.exctg_th:
            raise StrategyConfigException(f'ctg_th ({self.ctg_th}) must be below exctg_th ({self.exctg_th})')

    def static_params(self) -> GeneralizeParams:
        """
        Parameters of a static strategy, as seen by the extended generalization
        """
        if self.kind == StrategyKind.Standard:
            return GeneralizeParams(branch='standard', ctg_lv=0, ctg_max=self.ctg_max,
                                    exctg_limit=self.exctg_limit)
        if self.kind == StrategyKind.Ctg:
            return GeneralizeParams(branch='ctg', ctg_lv=self.ctg_lv, ctg_max=self.ctg_max, exctg_limit=1)
        if self.kind == StrategyKind.Exctg:
            return GeneralizeParams(branch='exctg', ctg_lv=self.ctg_lv, ctg_max=self.ctg_max,
                                    exctg_limit=self.exctg_limit)
        raise StrategyConfigException('Dynamic strategy has no static parameters')

    def to_dict(self) -> dict:
        return {'strategy': self.kind.name.lower(), 'ctg_lv': self.ctg_lv, 'ctg_max': self.ctg_max,
                'exctg_limit': self.exctg_limit, 'ctg_th': self.ctg_th, 'exctg_th': self.exctg_th,
                'literal_order': self.literal_order.name.lower(), 'unified': self.unified}

    def __repr__(self):
        return f'StrategyConfig({self.to_dict()})'


def dyn_ctg_max(sact: int, ctg_th: int) -> int:
    return (sact - ctg_th) // 10 + 2


def dyn_exctg_limit(sact: int, exctg_th: int) -> int:
    """
    Grows with the power 0.3 of the excess activity, rounded half up
    """
    return int(math.floor((sact - exctg_th) ** 0.3 * 2 + 5 + 0.5))


def strategy_params(sact: int, cfg: StrategyConfig) -> GeneralizeParams:
    """
    Adaptive choice from the activity of the successor obligation
    :param sact: failed blocking attempts recorded for the successor
    :param cfg:
    :return:
    """
    assert sact >= 0
    if sact < cfg.ctg_th:
        return GeneralizeParams(branch='standard', ctg_lv=0, ctg_max=cfg.ctg_max, exctg_limit=1)
    if sact < cfg.exctg_th:
        return GeneralizeParams(branch='ctg', ctg_lv=1, ctg_max=dyn_ctg_max(sact, cfg.ctg_th),
                                exctg_limit=1)
    return GeneralizeParams(branch='exctg', ctg_lv=1, ctg_max=5,
                            exctg_limit=dyn_exctg_limit(sact, cfg.exctg_th))


class StrategyConfigException(Exception):

    def __init__(self, msg: str):
        super().__init__(f"StrategyConfigException: {msg}")
