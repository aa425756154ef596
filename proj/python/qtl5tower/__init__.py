"""5-class towers of cyclic quartic fields: python surface of the C++ core."""

import os as _os

_here = _os.path.dirname(__file__)
_data = _os.path.join(_here, "data")
if _os.path.isdir(_data):
    _os.environ.setdefault("QTL_DATA", _data)

from ._qtl import (  # noqa: E402,F401
    artin_pattern,
    build_quartic,
    class_group,
    classify_case,
    consistency_check,
    data_dir,
    family_member,
    frobenius_classify,
    group_names,
    identify,
    pell4,
    rank5,
    sigma_flags,
)
