import pathlib
import setuptools


HERE = pathlib.Path(__file__).parent

README = (HERE/'README.md').read_text()

setuptools.setup(
    name='qlc_reduction',
    version='1.0',
    description='Tiling reductions into the predicate logic of linear '
                'Kripke frames, with finite countermodel checks.',
    long_description=README,
    long_description_content_type='text/markdown',
    license='MIT',
    classifiers=[
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python'
    ],
    packages=setuptools.find_packages(exclude=['test', 'test.*']),
    install_requires=['lark>=1.1'],
    extras_require={'progress': ['tqdm>=4.40']},
    entry_points={
        'console_scripts': ['qlc-reduction=qlc_reduction.cli:main']
    },
    python_requires=">=3.8"
)
