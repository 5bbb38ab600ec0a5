import sys

from EffectOrder.cli import main


if __name__ == '__main__':
    sys.exit(main())
