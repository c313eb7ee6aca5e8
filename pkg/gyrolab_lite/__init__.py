"""gyrolab-lite - finite and model gyrogroup verification engine"""

__version__ = "0.3.0"
