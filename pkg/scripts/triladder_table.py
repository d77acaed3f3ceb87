# scripts/triladder_table.py
import os
import sys

import pandas as pd

# Fix path so we can import 'app'
sys.path.append(os.getcwd())

from app.triladder import TRILADDER_MAX_VERTICES, triladder_rows

# --- CONFIGURATION ---
MAX_N = int(os.getenv("NB_TABLE_MAX_N") or TRILADDER_MAX_VERTICES)
OUTPUT_CSV = os.getenv("NB_TABLE_CSV") or "triladders.csv"


def main():
    df = pd.DataFrame(triladder_rows(MAX_N))
    df.to_csv(OUTPUT_CSV, index=False)
    print(df.to_string(index=False))
    print("------------------------------------------------")
    # near-bipartite tri-ladders per order, with the removable-edge count
    summary = (
        df[df["near_bipartite"]]
        .groupby("n")
        .agg(count=("index", "size"), removable=("removable", "max"))
        .reset_index()
    )
    print(summary.to_string(index=False))
    print(f"✅ Saved {len(df)} rows to {OUTPUT_CSV}")


if __name__ == "__main__":
    main()
