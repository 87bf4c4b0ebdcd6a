from pathlib import Path
from typing import Any, Iterable, List, Sequence, Union
import json

from .exceptions import MalformedInputError

PathLike = Union[str, Path]


def load_json(source: Union[PathLike, dict]) -> Any:
    """
    Reads a JSON document, passing dictionaries through untouched.
    Decoding errors are raised as :class:`MalformedInputError` carrying
    the line and column reported by the decoder.
    """
    if isinstance(source, dict):
        return source
    path = str(source)
    with open(path, 'r', encoding='utf-8') as f:
        text = f.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInputError(path, e.msg, e.lineno, e.colno) from e


def source_name(source: Union[PathLike, dict]) -> str:
    return '<dict>' if isinstance(source, dict) else str(source)


def require(obj: dict, key: str, kind: type, path: str) -> Any:
    """Fetches ``obj[key]`` and checks its type."""
    if not isinstance(obj, dict) or key not in obj:
        raise MalformedInputError(path, f'missing field "{key}"')
    value = obj[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise MalformedInputError(
            path, f'field "{key}" should be of type {kind.__name__}')
    return value


def naturals(values: Iterable, path: str, what: str) -> List[int]:
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise MalformedInputError(path, f'{what} must be naturals, '
                                            f'got {v!r}')
        out.append(v)
    return out


def parse_cell(text: str) -> Sequence[int]:
    """Parses ``"i,j,t"`` as three naturals."""
    parts = text.split(',')
    if len(parts) != 3:
        raise ValueError(f'Expected "i,j,t", got "{text}".')
    return tuple(int(p) for p in parts)


def stable_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
