"""Module defining the exceptions raised by the lifespan package.

lifespan パッケージが送出する例外を定義するモジュール.
"""


class LifespanError(Exception):
    """Base class for all errors of the package.

    パッケージ内の全ての例外の基底クラス.
    """


class DomainError(LifespanError, ValueError):
    """Argument outside the domain of a function.

    関数の定義域外の引数.
    """


class ConfigurationError(LifespanError, ValueError):
    """Inconsistent family, amplitude or sweep configuration.

    データ族・振幅・スイープ設定の不整合.
    """


class PreconditionError(LifespanError, ValueError):
    """A theorem hypothesis required by the operation does not hold.

    操作に必要な定理の仮定が成り立たない.
    """


class GridMismatchError(LifespanError, ValueError):
    """Field shapes or spacings do not match.

    格子の形状または刻み幅が一致しない.
    """


class FitError(LifespanError, ValueError):
    """Not enough usable records to fit a scaling law.

    スケーリング則の当てはめに使えるレコードが不足している.
    """
