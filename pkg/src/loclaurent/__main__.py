from loclaurent.cli import main

raise SystemExit(main())
