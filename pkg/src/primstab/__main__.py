from primstab.cli.main import main

raise SystemExit(main())
