# __main__.py
"""python -m hypoindex"""

from .cli import main

if __name__ == '__main__':
    main()
