__title__ = "linkcomm"
__description__ = (
    "Detect link communities with link-node-link random walk dynamics"
)
__version__ = "0.1.0"
__license__ = "MIT"
