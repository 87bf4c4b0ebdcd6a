#!/usr/bin/env python3
from logging.config import dictConfig
from typing import Union
import logging
import os
import json
import sys

from qlc_reduction import cli


def setup_logging(config_file: str = None, log_dir: str = None,
                  log_level: Union[str, int] = None) -> dict:
    if config_file is None:
        config_file = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                                   'logging_config.json')

    if log_level is None:
        log_level = os.environ.get('LOGLEVEL', logging.WARNING)

    with open(config_file, 'r') as f:
        config = json.load(f)

    if log_dir is None:
        # Without a log directory only the console handler is kept
        config['handlers'] = {
            'console_handler': config['handlers']['console_handler']
        }
        for obj in config['loggers'].values():
            obj['handlers'] = ['console_handler']

    for obj_type in 'loggers', 'handlers':
        obj: dict
        for obj in config[obj_type].values():
            if obj['level'] in ('NOTSET', logging.NOTSET):
                # Use environment variable if level is not set
                obj['level'] = log_level
            if (obj_type == 'handlers'
                    and log_dir is not None
                    and 'filename' in obj.keys()):
                obj['filename'] = os.path.join(log_dir, obj['filename'])

    return config


def main() -> int:
    try:
        logging_config = setup_logging(os.environ.get('LOG_CONFIG'),
                                       log_dir=os.environ.get('LOGDIR'))
        dictConfig(logging_config)
    except FileNotFoundError:
        logging.basicConfig(level=os.environ.get('LOGLEVEL', logging.WARNING))
    return cli.main()


if __name__ == '__main__':
    sys.exit(main())
