import subprocess
import sys

from chordgraph.config import Config


def start_api():
    subprocess.run([sys.executable, "-m", "uvicorn", "chordgraph.api:app",
                    "--host", Config.HOST, "--port", str(Config.PORT)])


if __name__ == "__main__":
    print("Starting chordgraph service...")
    print(f"API: http://localhost:{Config.PORT}")
    print("CLI: chordgraph --help")
    start_api()
