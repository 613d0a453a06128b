from .file_utils import export_dot, export_jsonl, load_jsonl, write_output
from .parser import parse_seed_range, parse_int_list

__all__ = ['export_dot', 'export_jsonl', 'load_jsonl', 'write_output', 'parse_seed_range', 'parse_int_list']
