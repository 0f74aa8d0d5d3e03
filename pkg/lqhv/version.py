VERSION = (2026, 1)
VERSION_TEXT = ".".join(str(i) for i in VERSION)
