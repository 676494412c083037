# -*- encoding: utf-8 -*-
import sys

from suspended_circuits.main import main

sys.exit(main())
