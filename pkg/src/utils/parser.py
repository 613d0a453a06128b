"""Parser de argumentos de la línea de comandos (rangos de semillas, listas)."""
import re
from typing import List

RANGE_RE = re.compile(r'^\s*(\d+)\s*\.\.\s*(\d+)\s*$')


def parse_seed_range(text: str) -> range:
    """
    Interpreta un rango de semillas.
    Acepta "0..999" (inclusive) o una única semilla "42".
    """
    match = RANGE_RE.match(text)
    if match:
        start, end = int(match.group(1)), int(match.group(2))
        if end < start:
            raise ValueError(f"rango vacío: {text}")
        return range(start, end + 1)
    if re.fullmatch(r'\s*\d+\s*', text):
        seed = int(text)
        return range(seed, seed + 1)
    raise ValueError(f"rango de semillas inválido: '{text}' (usar A..B o N)")


def parse_int_list(text: str) -> List[int]:
    """Lista separada por comas: "4,7,10"."""
    parts = [p for p in re.split(r'[,\s]+', text.strip()) if p]
    if not parts or not all(p.isdigit() for p in parts):
        raise ValueError(f"lista de enteros inválida: '{text}'")
    return [int(p) for p in parts]
