import logging
import os
from datetime import datetime

from src.netpart.config import Config

LOG_FILE = f"{datetime.now().strftime('%m_%d_%Y_%H_%M_%S')}_{os.getpid()}.log"
os.makedirs(Config.log_dir, exist_ok=True)

LOG_FILE_PATH = os.path.join(Config.log_dir, LOG_FILE)

logging.basicConfig(
    filename=LOG_FILE_PATH,
    format="[ %(asctime)s ] %(lineno)d %(name)s - %(levelname)s - %(message)s",
    level=getattr(logging, Config.log_level.upper(), logging.INFO),
)
