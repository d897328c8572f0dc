"""Rational homotopy models of mapping spaces.

Thin wrappers over the C++ core: report builders return parsed JSON.
"""

import json as _json

from ._core import (  # noqa: F401
    InputError,
    InvariantError,
    check_file_json,
    component_report_json,
    koszul_sign,
    mc_report_json,
    model_report_json,
    rref,
    shuffles,
    tree_census,
    __version__,
)


def model_report(algebra_text, sullivan_text, check_transfer=False, max_arity=4):
    return _json.loads(model_report_json(algebra_text, sullivan_text, check_transfer, max_arity))


def mc_report(algebra_text, sullivan_text):
    return _json.loads(mc_report_json(algebra_text, sullivan_text))


def component_report(algebra_text, sullivan_text, mc, max_arity=4, grouplike=False):
    return _json.loads(component_report_json(algebra_text, sullivan_text, mc, max_arity, grouplike))


def check_file(text, kind):
    return _json.loads(check_file_json(text, kind))
