"""
Configuration management for gradalg
"""

import os
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

DEFAULT_CONFIG: Dict[str, Any] = {
    'parallel': {
        'threads': 4,
    },
    'output': {
        'format': 'json',
    },
    'logging': {
        'level': 'INFO',
        'file': None,
    },
}

PACKAGE_ROOT = Path(__file__).parent


class Config:
    """Configuration manager: YAML file overlaid by GRADALG_* environment variables"""

    def __init__(self, config_path: Optional[str] = None):
        self.config_path = config_path or os.getenv('GRADALG_CONFIG_PATH', 'config/gradalg.yml')
        self.config = self._load_config()

        parallel = self.config.get('parallel', {})
        output = self.config.get('output', {})
        logging_cfg = self.config.get('logging', {})

        self.threads = max(1, int(os.getenv('GRADALG_THREADS', parallel.get('threads', 4))))
        self.output_format = os.getenv('GRADALG_OUTPUT_FORMAT', output.get('format', 'json'))
        self.log_level = os.getenv('GRADALG_LOG_LEVEL', logging_cfg.get('level', 'INFO')).upper()
        self.log_file = os.getenv('GRADALG_LOG_FILE', logging_cfg.get('file') or '') or None

        # Paths
        self.golden_root = Path(os.getenv('GRADALG_GOLDEN_ROOT', str(PACKAGE_ROOT / 'golden')))
        self.schema_root = PACKAGE_ROOT / 'schemas'

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from YAML file, falling back to defaults"""
        if os.path.exists(self.config_path):
            with open(self.config_path, 'r', encoding='utf-8') as f:
                loaded = yaml.safe_load(f) or {}
            merged = {key: dict(value) for key, value in DEFAULT_CONFIG.items()}
            for section, values in loaded.items():
                if isinstance(values, dict):
                    merged.setdefault(section, {}).update(values)
                else:
                    merged[section] = values
            return merged
        return {key: dict(value) for key, value in DEFAULT_CONFIG.items()}

    def save_config(self):
        """Save current configuration to YAML file"""
        directory = os.path.dirname(self.config_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        self.config['parallel']['threads'] = self.threads
        self.config['output']['format'] = self.output_format
        self.config['logging']['level'] = self.log_level
        self.config['logging']['file'] = self.log_file
        with open(self.config_path, 'w', encoding='utf-8') as f:
            yaml.dump(self.config, f, default_flow_style=False, allow_unicode=True)

    def golden_path(self, group_name: str, d: int) -> Path:
        """Path of the golden case table for a built-in group"""
        return self.golden_root / f"{group_name.lower()}_d{d}.yml"
