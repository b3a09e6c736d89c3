from antilist.cli import main

main()
