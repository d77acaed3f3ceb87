# scripts/build_corpus.py
import os
import sys
import time

# Fix path so we can import 'app'
sys.path.append(os.getcwd())

from app.corpus import CACHE_DIR, CUBIC_MAX_VERTICES, KNOWN_CUBIC_COUNTS, builtin_cubic_enumerator

# --- CONFIGURATION ---
MAX_N = int(os.getenv("NB_BUILD_MAX_N") or 12)


def build_cache():
    print(f"🚀 Building cubic corpus cache in {CACHE_DIR} (n <= {MAX_N})")
    print("------------------------------------------------")
    for n in range(4, min(MAX_N, CUBIC_MAX_VERTICES) + 1, 2):
        start = time.perf_counter()
        corpus = builtin_cubic_enumerator(n)
        elapsed = time.perf_counter() - start
        expected = KNOWN_CUBIC_COUNTS.get(n)
        mark = "✅" if len(corpus) == expected else "❌"
        print(f"{mark} n={n}: {len(corpus)} graphs (expected {expected}) in {elapsed:.1f}s")


if __name__ == "__main__":
    build_cache()
