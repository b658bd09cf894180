"""
Parser modules for the supported unit systems
"""

from .base_parser import BaseParser
from .natural_parser import NaturalParser
from .si_parser import SIParser
from .parser_factory import create_parser, parse_file

__all__ = ['BaseParser', 'NaturalParser', 'SIParser', 'create_parser', 'parse_file']
