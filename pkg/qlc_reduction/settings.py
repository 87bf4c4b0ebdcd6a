from pathlib import Path
from typing import IO, Union
import json
import os


class Settings(object):

    """
    Tunable knobs shared by the verification commands. Use the
    :meth:`from_json` method to build an object from a JSON file on the
    disk and the :meth:`default` method to build the object specified by
    the `_DEFAULT_SETTINGS` class attribute. :meth:`from_environment`
    reads the file named by the `QLC_SETTINGS` variable when it exists.
    """

    _DEFAULT_SETTINGS = {
        'margin': 3,
        'memoize': True,
        'workers': 1,
        'solver_node_limit': 0,
        'sublemma_padding': 3
    }

    def __init__(self, margin, memoize, workers, solver_node_limit,
                 sublemma_padding):
        self.margin = int(margin)
        self.memoize = bool(memoize)
        self.workers = max(1, int(workers))
        self.solver_node_limit = int(solver_node_limit)
        self.sublemma_padding = int(sublemma_padding)

    def __getitem__(self, item):
        try:
            return getattr(self, item)
        except AttributeError:
            return None

    def __str__(self):
        return f'{self.__class__.__name__}({str(self.to_dict())})'

    __repr__ = __str__

    @classmethod
    def default(cls) -> 'Settings':
        return cls(**cls._DEFAULT_SETTINGS)

    @classmethod
    def from_json(cls, json_path: Union[str, Path, IO]) -> 'Settings':
        """Creates settings from a JSON file; missing keys take defaults."""
        if isinstance(json_path, (str, Path)):
            with open(json_path, 'r') as f:
                loaded = json.load(f)
        else:
            with json_path:
                loaded = json.load(json_path)
        kwargs = dict(cls._DEFAULT_SETTINGS)
        kwargs.update({k: v for k, v in loaded.items() if k in kwargs})
        return cls(**kwargs)

    @classmethod
    def from_environment(cls) -> 'Settings':
        path = os.environ.get('QLC_SETTINGS')
        if path and os.path.exists(path):
            return cls.from_json(path)
        return cls.default()

    def to_dict(self) -> dict:
        return dict(self.__dict__)
