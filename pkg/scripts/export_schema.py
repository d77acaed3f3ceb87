# scripts/export_schema.py
import json
import os
import sys
from pathlib import Path

# Fix path so we can import 'app'
sys.path.append(os.getcwd())

from app.schemas import SCHEMA_MODELS

OUTPUT_DIR = Path(os.getenv("NB_SCHEMA_DIR") or "docs")


def export():
    OUTPUT_DIR.mkdir(parents=True, exist_ok=True)
    for name, model in SCHEMA_MODELS.items():
        path = OUTPUT_DIR / f"{name}.schema.json"
        path.write_text(json.dumps(model.model_json_schema(), indent=2) + "\n", encoding="utf-8")
        print(f"✅ {path}")


if __name__ == "__main__":
    export()
