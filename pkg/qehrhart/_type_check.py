"""
Type checking decorator for qehrhart.

Provides runtime argument checking that is only active during unit tests.
Rational parameters accept any ``numbers.Rational`` (int or Fraction).
"""

import collections.abc
import functools
import inspect
import numbers
import os
from fractions import Fraction
from pathlib import Path
from typing import Union, get_args, get_origin, get_type_hints


# Read at decoration time, so the test suite sets QEHRHART_TYPECHECK=1 before importing qehrhart
TYPECHECK_ENABLED = os.environ.get("QEHRHART_TYPECHECK") == "1"


def _type_name(expected_type) -> str:
    return getattr(expected_type, '__name__', str(expected_type))


def _check_elements(value, elem_type, param_name: str):
    for i, elem in enumerate(value):
        _check_type(elem, elem_type, f"{param_name}[{i}]")


def _check_type(value, expected_type, param_name: str):
    """Check if value matches expected type, raise TypeError if not."""
    if expected_type is inspect.Parameter.empty or expected_type is object:
        return

    origin = get_origin(expected_type)

    if value is None:
        if origin is Union and type(None) in get_args(expected_type):
            return
        if expected_type is type(None):  # pylint: disable=unidiomatic-typecheck
            return
        raise TypeError(f"Parameter '{param_name}' expected {_type_name(expected_type)}, got None")

    if origin is None:
        if expected_type is Path:
            if not isinstance(value, (Path, str)):
                raise TypeError(f"Parameter '{param_name}' expected Path, got {type(value).__name__}")
        elif expected_type is Fraction:
            # bool is an int, but never a meaningful rational here
            if isinstance(value, bool) or not isinstance(value, numbers.Rational):
                raise TypeError(f"Parameter '{param_name}' expected rational, got {type(value).__name__}")
        elif expected_type is int:
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"Parameter '{param_name}' expected int, got {type(value).__name__}")
        elif isinstance(expected_type, type) and not isinstance(value, expected_type):
            raise TypeError(
                f"Parameter '{param_name}' expected {expected_type.__name__}, got {type(value).__name__}")

    elif origin in (list, tuple, collections.abc.Sequence):
        accepted = (list, tuple) if origin is not list else (list,)
        if not isinstance(value, accepted):
            raise TypeError(f"Parameter '{param_name}' expected {origin.__name__}, got {type(value).__name__}")
        args = [a for a in get_args(expected_type) if a is not Ellipsis]
        if len(args) == 1 and value:
            _check_elements(value, args[0], param_name)

    elif origin is dict:
        if not isinstance(value, dict):
            raise TypeError(f"Parameter '{param_name}' expected dict, got {type(value).__name__}")

    elif origin is Union:
        args = get_args(expected_type)
        for arg in args:
            if arg is type(None):  # pylint: disable=unidiomatic-typecheck
                continue
            try:
                _check_type(value, arg, param_name)
                return
            except TypeError:
                continue
        type_names = [_type_name(a) for a in args if a is not type(None)]  # pylint: disable=unidiomatic-typecheck
        raise TypeError(
            f"Parameter '{param_name}' expected one of {type_names}, got {type(value).__name__}"
        )


def typecheck(func):
    """Decorator that checks function argument types against type hints.

    Only active under the test suite. Otherwise returns the function unchanged.
    """
    if not TYPECHECK_ENABLED:
        return func

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            hints = get_type_hints(func)
        except Exception:
            return func(*args, **kwargs)

        sig = inspect.signature(func)
        bound = sig.bind_partial(*args, **kwargs)
        for param_name, value in bound.arguments.items():
            if param_name in hints and param_name != 'return':
                _check_type(value, hints[param_name], param_name)

        return func(*args, **kwargs)

    return wrapper


def typecheck_methods(cls):
    """Class decorator that applies typecheck to all public methods."""
    if not TYPECHECK_ENABLED:
        return cls

    for name, method in inspect.getmembers(cls, predicate=inspect.isfunction):
        # Skip private/magic methods except __init__
        if name.startswith('_') and name != '__init__':
            continue
        if isinstance(inspect.getattr_static(cls, name), (staticmethod, classmethod)):
            continue
        setattr(cls, name, typecheck(method))

    return cls
