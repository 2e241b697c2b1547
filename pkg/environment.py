""" This loads environment variables from a defined location """
import pathlib

from dotenv import load_dotenv


def load_env(locations=('.env', '../.env', '../env/.env')):
    """Loads the first existing env file; variables already set are kept.

    Returns the path that was loaded, or None.
    """
    for loc in locations:
        path = pathlib.Path(loc)
        if path.exists() and path.is_file():
            load_dotenv(path, override=False)
            return str(path)
    return None


if __name__ == "__main__":
    load_env()
