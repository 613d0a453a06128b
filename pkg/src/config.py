"""Configuración de la simulación."""
import os
from pathlib import Path

# Cargar variables de entorno desde .env si existe
try:
    from dotenv import load_dotenv
    env_path = Path(__file__).parent.parent / '.env'
    load_dotenv(env_path)
except ImportError:
    pass

# Valores por defecto de los escenarios (unidades de tiempo simulado)
DEFAULT_TIMEOUT = float(os.getenv('BULLSHARK_TIMEOUT', '10'))
DEFAULT_POST_GST_BOUND = float(os.getenv('BULLSHARK_POST_GST_BOUND', '1'))

# Límite de eventos antes de abortar por no-terminación
MAX_EVENTS = int(os.getenv('BULLSHARK_MAX_EVENTS', '2000000'))

LOG_LEVEL = os.getenv('BULLSHARK_LOG_LEVEL', 'WARNING')

# 0 = un proceso por CPU
SWEEP_WORKERS = int(os.getenv('BULLSHARK_SWEEP_WORKERS', '0'))

SCENARIOS_DIR = Path(__file__).parent.parent / 'scenarios'
