import os

os.environ["PIMLANG_ENVIRONMENT"] = "TEST"
