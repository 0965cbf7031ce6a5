"""jonescope: exact colored Jones polynomials and their asymptotics."""

__version__ = "0.1.0"

from .qlaurent import (  # noqa: F401
    EvalPoint,
    InexactDivisionError,
    QLaurent,
    QSeries,
    ZeroDegreeError,
    exact_div,
    qbinom,
    qfact,
    qfalling,
    qint,
)
